#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "tenkit/errors.hpp"
#include "tenkit/hooi.hpp"
#include "tenkit/hosvd.hpp"
#include "tenkit/parallel.hpp"
#include "tenkit/synthetic.hpp"
#include "tenkit/tensor_ops.hpp"

using tenkit::AlsConfig;
using tenkit::DenseTensor;
using tenkit::FactorEngine;
using tenkit::HooiConfig;
using tenkit::Shape;
using tenkit::Truncation;
using testutil::bitwise_equal;
using testutil::random_tensor;

namespace {

DenseTensor tucker_tensor(const std::vector<std::size_t>& dims,
                          const std::vector<std::size_t>& ranks, double delta,
                          std::uint64_t seed) {
  tenkit::TuckerSpec spec;
  spec.dims = dims;
  spec.ranks = ranks;
  spec.noise_delta = delta;
  spec.seed = seed;
  return tenkit::gen_tucker(spec).noisy;
}

double explicit_rel(const DenseTensor& t, const tenkit::TuckerTensor& tk) {
  return tenkit::relative_error(t, tenkit::reconstruct(tk));
}

FactorEngine als_engine(double eta, std::uint64_t seed) {
  AlsConfig cfg;
  cfg.eta = eta;
  cfg.seed = seed;
  cfg.max_iters = 100;
  return FactorEngine::with_als(cfg);
}

}  // namespace

TEST_SUITE("hooi") {
  TEST_CASE("an already-optimal warm start converges in one iteration") {
    DenseTensor t = tucker_tensor({10, 9, 8}, {3, 2, 3}, 0.0, 700);
    Truncation trunc{{3, 2, 3}};
    auto [init, rep] = tenkit::st_hosvd(t, trunc, std::nullopt,
                                        FactorEngine::svd());
    REQUIRE(rep.relative_residual <= 1e-10);

    tenkit::HooiResult out = tenkit::hooi(t, trunc, init, HooiConfig{});
    CHECK(out.converged);
    CHECK(out.iterations == 1);
    CHECK(explicit_rel(t, out.tucker) <= 1e-10);
    REQUIRE(out.fit_history.size() == 2);
    CHECK(out.fit_history[0] == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("fit history starts at the warm start's fit") {
    DenseTensor t = random_tensor({8, 7, 9}, 701);
    Truncation trunc{{3, 3, 3}};
    auto [init, rep] = tenkit::t_hosvd(t, trunc, FactorEngine::svd());
    HooiConfig cfg;
    cfg.max_iters = 4;
    tenkit::HooiResult out = tenkit::hooi(t, trunc, init, cfg);
    CHECK(out.fit_history[0] ==
          doctest::Approx(1.0 - rep.relative_residual).epsilon(1e-12));
    CHECK(out.fit_history.size() == static_cast<std::size_t>(out.iterations) + 1);
  }

  TEST_CASE("fit is nondecreasing on a batch of random problems") {
    const std::vector<std::vector<std::size_t>> shapes = {
        {6, 7, 8}, {9, 5, 6}, {7, 7, 7}, {5, 8, 6}, {4, 6, 9}};
    int problems = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto& dims = shapes[seed % shapes.size()];
      DenseTensor t = random_tensor(dims, 7100 + seed);
      Truncation trunc{{2, 3, 2}};
      auto [init, rep] = tenkit::st_hosvd(t, trunc, std::nullopt,
                                          FactorEngine::svd());
      HooiConfig cfg;
      cfg.max_iters = 15;
      tenkit::HooiResult out = tenkit::hooi(t, trunc, init, cfg);
      for (std::size_t k = 0; k + 1 < out.fit_history.size(); ++k) {
        CHECK(out.fit_history[k + 1] >= out.fit_history[k] - 1e-12);
      }
      CHECK(out.tucker.max_orthonormality_defect() <= 1e-12);
      ++problems;
    }
    CHECK(problems == 50);
  }

  TEST_CASE("all six warm starts land on the same refined residual") {
    DenseTensor t = tucker_tensor({12, 11, 10}, {3, 2, 4}, 1e-3, 702);
    Truncation trunc{{3, 2, 4}};
    HooiConfig cfg;  // tol 1e-12, max 100

    std::vector<double> finals;
    std::vector<double> warms;
    auto refine = [&](const tenkit::TuckerTensor& init, double warm_rel) {
      tenkit::HooiResult out = tenkit::hooi(t, trunc, init, cfg);
      double rel = explicit_rel(t, out.tucker);
      CHECK(rel <= warm_rel + 1e-12);
      finals.push_back(rel);
      warms.push_back(warm_rel);
    };

    for (int st = 0; st < 2; ++st) {
      const std::vector<FactorEngine> engines = {
          FactorEngine::svd(), FactorEngine::eig(), als_engine(1e-4, 11)};
      for (const auto& engine : engines) {
        if (st == 0) {
          auto [init, rep] = tenkit::t_hosvd(t, trunc, engine);
          refine(init, rep.relative_residual);
        } else {
          auto [init, rep] =
              tenkit::st_hosvd(t, trunc, std::nullopt, engine);
          refine(init, rep.relative_residual);
        }
      }
    }
    REQUIRE(finals.size() == 6);
    double lo = *std::min_element(finals.begin(), finals.end());
    double hi = *std::max_element(finals.begin(), finals.end());
    CHECK(hi - lo <= 1e-8);
    double warm_best = *std::min_element(warms.begin(), warms.end());
    for (double rel : finals) {
      CHECK(rel <= warm_best + 1e-12);
    }
  }

  TEST_CASE("the iteration cap is a status, not an error") {
    DenseTensor t = random_tensor({7, 8, 6}, 703);
    Truncation trunc{{2, 2, 2}};
    auto [init, rep] = tenkit::st_hosvd(t, trunc, std::nullopt,
                                        FactorEngine::svd());
    HooiConfig cfg;
    cfg.tol = 1e-300;
    cfg.max_iters = 3;
    tenkit::HooiResult out = tenkit::hooi(t, trunc, init, cfg);
    CHECK_FALSE(out.converged);
    CHECK(out.iterations == 3);
    CHECK(out.fit_history.size() == 4);
  }

  TEST_CASE("hooi is deterministic and thread-count invariant") {
    DenseTensor t = tucker_tensor({9, 8, 7}, {2, 3, 2}, 1e-3, 704);
    Truncation trunc{{2, 3, 2}};
    auto [init, rep] = tenkit::st_hosvd(t, trunc, std::nullopt,
                                        FactorEngine::svd());
    HooiConfig cfg;
    cfg.max_iters = 10;

    tenkit::set_threads(1);
    tenkit::HooiResult a = tenkit::hooi(t, trunc, init, cfg);
    tenkit::set_threads(4);
    tenkit::HooiResult b = tenkit::hooi(t, trunc, init, cfg);
    tenkit::set_threads(1);
    CHECK(a.iterations == b.iterations);
    CHECK(a.fit_history == b.fit_history);
    CHECK(bitwise_equal(a.tucker.core, b.tucker.core));
  }

  TEST_CASE("conformance guards") {
    DenseTensor t = random_tensor({6, 6, 6}, 705);
    Truncation trunc{{2, 2, 2}};
    auto [init, rep] = tenkit::st_hosvd(t, trunc, std::nullopt,
                                        FactorEngine::svd());

    // Mismatched truncation vs. init.
    CHECK_THROWS_AS(tenkit::hooi(t, Truncation{{3, 2, 2}}, init, HooiConfig{}),
                    tenkit::DimensionMismatchError);

    // Mismatched origin tensor.
    DenseTensor other = random_tensor({6, 6, 5}, 706);
    CHECK_THROWS_AS(tenkit::hooi(other, trunc, init, HooiConfig{}),
                    tenkit::DimensionMismatchError);

    // A mode rank above the product of the others cannot be refined.
    Truncation lopsided{{5, 1, 1}};
    auto [init2, rep2] = tenkit::st_hosvd(t, lopsided, std::nullopt,
                                          FactorEngine::svd());
    CHECK_THROWS_AS(tenkit::hooi(t, lopsided, init2, HooiConfig{}),
                    tenkit::RankTooLargeError);
  }
}
