// Copyright 2026 The lmfca Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "../test_util.hpp"
#include "lmfca/checkpoint.hpp"
#include "lmfca/ops.hpp"

using namespace lmfca;

TEST_CASE("adam_step") {
  SUBCASE("zero gradient leaves parameters unchanged") {
    ParameterStore<float> store;
    std::mt19937_64 rng(1);
    store.add("w", lmfca::testing::random_tensor<float>({3, 2}, rng));
    const auto before = store.get("w").value();
    store.zero_grad();
    TrainState state;
    adam_step(store, state, 1e-3);
    CHECK(store.get("w").value() == before);
    CHECK(state.step == 1);
  }
  SUBCASE("first step moves by about -lr * sign(g)") {
    ParameterStore<float> store;
    store.add("w", Tensor<float>({2}, std::vector<float>{0.5f, 0.5f}));
    store.zero_grad();
    store.get("w").mutable_grad()[0] = 3.0f;
    store.get("w").mutable_grad()[1] = -0.02f;
    TrainState state;
    adam_step(store, state, 0.01);
    CHECK(store.get("w").value()[0] == doctest::Approx(0.49).epsilon(1e-5));
    CHECK(store.get("w").value()[1] == doctest::Approx(0.51).epsilon(1e-5));
  }
  SUBCASE("ten steps on w^2 strictly shrink |w|") {
    ParameterStore<float> store;
    store.add("w", Tensor<float>::scalar(1.0f));
    TrainState state;
    double prev = 1.0;
    for (int i = 0; i < 10; ++i) {
      auto& w = store.get("w");
      store.zero_grad();
      backward(ops::mul(w, w));
      adam_step(store, state, 0.1);
      const double now = std::abs(w.value().item());
      CHECK(now < prev);
      prev = now;
    }
  }
  SUBCASE("missing gradient is a contract violation") {
    ParameterStore<float> store;
    store.add("w", Tensor<float>::scalar(1.0f));
    TrainState state;
    CHECK_THROWS_AS(adam_step(store, state, 0.1), ContractViolation);
  }
}

TEST_CASE("parameter store") {
  ParameterStore<float> store;
  store.add("a.weight", Tensor<float>({2}));
  CHECK_THROWS_AS(store.add("a.weight", Tensor<float>({2})), ContractViolation);
  CHECK_THROWS_AS(store.get("missing"), ContractViolation);
  CHECK(store.element_count() == 2);
}

TEST_CASE("checkpoint round trip is byte-identical") {
  std::mt19937_64 rng(2);
  Checkpoint ck;
  ck.config_text = "model.c1=4\nmodel.mics=6";
  ck.params.add("enc.0.w", lmfca::testing::random_tensor<float>({3, 4}, rng));
  ck.params.add("enc.0.b", lmfca::testing::random_tensor<float>({4}, rng));
  ck.params.add("dec.k", lmfca::testing::random_tensor<float>({2, 2, 3, 1}, rng));
  ck.params.zero_grad();
  for (auto& v : ck.params.get("enc.0.w").mutable_grad().data()) v = 0.25f;
  ck.state.lr = 1e-4 / 3;
  ck.state.seed = 42;
  adam_step(ck.params, ck.state, ck.state.lr);

  const std::string first = encode_checkpoint(ck);
  CHECK(first.rfind("LMFCA1", 0) == 0);
  const Checkpoint back = decode_checkpoint(first);
  CHECK(back.state == ck.state);
  CHECK(back.params.get("dec.k").value() == ck.params.get("dec.k").value());
  CHECK(encode_checkpoint(back) == first);

  SUBCASE("corrupt inputs are load errors") {
    CHECK_THROWS_AS(decode_checkpoint("NOTACK"), LoadError);
    CHECK_THROWS_AS(decode_checkpoint(first.substr(0, first.size() - 3)), LoadError);
  }
}
