#include <doctest.h>

#include <thread>
#include <vector>

#include "cram/errcurve.hpp"
#include "cram/ratfun.hpp"

using namespace cram;

TEST_CASE("shared immutable sets evaluate identically across threads") {
    CoefficientSet s = builtin_set(14, 40);
    Grid g = Grid::log(XReal::parse("-2e2", 30), XReal::parse("-1e-2", 30), 400);
    std::vector<XReal> xs = g.materialize();

    // serial reference
    std::vector<XReal> want;
    want.reserve(xs.size());
    for (const auto& x : xs) want.push_back(eval_real(s, x.with_digits(40)));

    const int nthreads = 4;
    std::vector<std::vector<XReal>> got((size_t)nthreads);
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            auto& out = got[(size_t)t];
            out.reserve(xs.size());
            for (const auto& x : xs) {
                // exercise the lazily built constants too
                XReal v = eval_real(s, x.with_digits(40));
                XReal e = exp(x.with_digits(40), 40);
                out.push_back(v + (e - e));
            }
        });
    }
    for (auto& th : pool) th.join();

    for (int t = 0; t < nthreads; ++t) {
        REQUIRE(got[(size_t)t].size() == want.size());
        for (size_t i = 0; i < want.size(); ++i) CHECK(got[(size_t)t][i] == want[i]);
    }
}

TEST_CASE("concurrent root finding on shared polynomials") {
    CoefficientSet s = builtin_set(16, 50);
    Polynomial q = denominator_from_poles(s, 50);
    RootResult serial = find_roots(q, 50);

    std::vector<RootResult> results(3);
    std::vector<std::thread> pool;
    for (int t = 0; t < 3; ++t)
        pool.emplace_back([&, t] { results[(size_t)t] = find_roots(q, 50); });
    for (auto& th : pool) th.join();

    for (const auto& r : results) {
        REQUIRE(r.roots.size() == serial.roots.size());
        for (size_t i = 0; i < r.roots.size(); ++i) CHECK(r.roots[i] == serial.roots[i]);
    }
}
