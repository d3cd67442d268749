#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

#include "charur/kernels.hpp"
#include "charur/moments.hpp"

using namespace charur;

TEST_SUITE("kernels") {
  TEST_CASE("serial and OpenMP kernels are bitwise identical") {
    std::mt19937_64 rng(1);
    const ObservableSet set = su11_set(0.5, 150);
    const CVector psi = random_state(set.basis(), rng).amplitudes();
    const CMatrix ys = kernels::apply_ops_serial(set.matrices(), psi);
    const CMatrix yp = kernels::apply_ops_parallel(set.matrices(), psi);
    CHECK(ys == yp);
    CHECK((ys.col(2) - set.ops[2].matrix * psi).norm() <= 1e-12);
    const CMatrix gs = kernels::gram_serial(ys), gp = kernels::gram_parallel(ys);
    CHECK(gs == gp);
    CHECK((gs - ys.adjoint() * ys).norm() <= 1e-10);
  }

  TEST_CASE("map_grid covers every index once and is order independent") {
    std::vector<int> hits(1000, 0);
    kernels::map_grid(1000, [&](int i) { hits[i] += 1; }, 4);
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));

    std::vector<double> a(200), b(200);
    auto body = [](std::vector<double>& out) {
      return [&out](int i) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(i));
        const ObservableSet set = canonical_set(1, 10);
        out[i] = moment_report(set, random_state(set.basis(), rng)).sigma(0, 0);
      };
    };
    kernels::map_grid(200, body(a), 1);
    kernels::map_grid(200, body(b), 3);
    CHECK(a == b);
  }

  TEST_CASE("map_grid rethrows the lowest failing index") {
    try {
      kernels::map_grid(100, [](int i) {
        if (i == 37 || i == 80) throw std::runtime_error(std::to_string(i));
      }, 4);
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "37");
    }
  }

  TEST_CASE("effective jobs") {
    CHECK(kernels::effective_jobs(1) == 1);
    CHECK(kernels::effective_jobs(0) >= 1);
  }
}
