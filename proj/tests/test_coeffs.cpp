#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cram/coeffs.hpp"
#include "support/testutil.hpp"

using namespace cram;

namespace {

struct FixtureRow {
    std::string kind;
    int index;
    std::string re, im;
};

std::vector<FixtureRow> read_fixture(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<FixtureRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        FixtureRow r;
        char kind[32], re[64], im[64];
        REQUIRE(std::sscanf(line.c_str(), "%31s %d %63s %63s", kind, &r.index, re, im) == 4);
        r.kind = kind;
        r.re = re;
        r.im = im;
        rows.push_back(r);
    }
    return rows;
}

std::string canon20(const std::string& lit) { return XReal::parse(lit, 30).str(20); }

} // namespace

TEST_CASE("builtin sets match the fixture transcription digit for digit") {
    for (int order : {14, 16}) {
        CoefficientSet s = builtin_set(order);
        auto rows = read_fixture(std::string(CRAM_TEST_DIR) + "/fixtures/table_order" +
                                 std::to_string(order) + ".txt");
        int half = order / 2;
        REQUIRE((int)rows.size() == 2 * half + 1);
        for (const auto& r : rows) {
            if (r.kind == "theta") {
                const XComplex& p = s.poles.at((size_t)r.index - 1);
                CHECK(p.re.str(20) == canon20(r.re));
                CHECK(p.im.str(20) == canon20(r.im));
            } else if (r.index == 0) {
                CHECK(s.alpha0.str(20) == canon20(r.re));
                CHECK(XReal::parse(r.im, 30).is_zero());
            } else {
                const XComplex& a = s.residues.at((size_t)r.index - 1);
                CHECK(a.re.str(20) == canon20(r.re));
                CHECK(a.im.str(20) == canon20(r.im));
            }
        }
    }
}

TEST_CASE("builtin set structure") {
    CoefficientSet s14 = builtin_set(14);
    CHECK(s14.alpha0.str(20) == "1.8321743782540412751e-14");
    CHECK(s14.poles.size() == 7);
    for (const auto& p : s14.poles) CHECK(p.im.sign() > 0);

    CoefficientSet s16 = builtin_set(16);
    CHECK(s16.poles[0].re.str(20) == "-1.0843917078696988026e1");
    CHECK(s16.poles[0].im.str(20) == "1.9277446167181652284e1");
    CHECK(s16.poles.size() == 8);

    CHECK(validate_set(s14).all_pass());
    CHECK(validate_set(s16).all_pass());

    CHECK_THROWS_AS(builtin_set(10), DomainError);
    try {
        builtin_set(12);
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("14, 16") != std::string::npos);
    }
}

TEST_CASE("truncate_set rounds half away from zero per component") {
    CoefficientSet s = builtin_set(14);
    CoefficientSet t20 = truncate_set(s, 20);
    CHECK(t20.alpha0 == s.alpha0);
    for (size_t j = 0; j < s.poles.size(); ++j) {
        CHECK(t20.poles[j] == s.poles[j]);
        CHECK(t20.residues[j] == s.residues[j]);
    }

    CoefficientSet t6 = truncate_set(s, 6);
    CHECK(t6.alpha0.str() == "1.83217e-14");
    CHECK(t6.poles[0].re.str() == "-8.89777e0");

    // idempotent, and coarser truncation of a finer one collapses
    CoefficientSet t6b = truncate_set(t6, 6);
    CHECK(t6b.alpha0 == t6.alpha0);
    CHECK(t6b.poles[3] == t6.poles[3]);
    CoefficientSet t11_then_6 = truncate_set(truncate_set(s, 11), 6);
    for (size_t j = 0; j < s.poles.size(); ++j)
        CHECK(t11_then_6.residues[j] == t6.residues[j]);

    CHECK_THROWS_AS(truncate_set(s, 0), DomainError);
    CHECK_THROWS_AS(truncate_set(s, 21), DomainError);
}

TEST_CASE("validation catches structural defects") {
    CoefficientSet s = builtin_set(14);
    s.poles.pop_back();
    ValidationReport rep = validate_set(s);
    CHECK(!rep.all_pass());
    bool found = false;
    for (const auto& i : rep.items)
        if (i.rule.find("length match") != std::string::npos && !i.pass) found = true;
    CHECK(found);

    CoefficientSet dup = builtin_set(14);
    dup.poles[2] = dup.poles[5];
    rep = validate_set(dup);
    CHECK(!rep.all_pass());

    CoefficientSet a0im = builtin_set(16);
    a0im.alpha0_im = XReal(1, 30).scaled_pow10(-3);
    rep = validate_set(a0im);
    found = false;
    for (const auto& i : rep.items)
        if (i.rule == "alpha0 must be real" && !i.pass) found = true;
    CHECK(found);
}

TEST_CASE("json save / load round-trips full digits") {
    CoefficientSet s = builtin_set(14, 40);
    std::string path = std::string(CRAM_TEST_BINDIR) + "/rt14.json";
    save_set(s, path);
    LoadResult lr = load_set(path, 40);
    CHECK(lr.warnings.empty());
    CHECK(lr.set.order == 14);
    CHECK(lr.set.alpha0 == s.alpha0);
    for (size_t j = 0; j < s.poles.size(); ++j) {
        CHECK(lr.set.poles[j] == s.poles[j]);
        CHECK(lr.set.residues[j] == s.residues[j]);
    }
    CHECK(lr.set.label == s.label);
}

TEST_CASE("loader normalizes lower-half-plane representatives") {
    CoefficientSet s = builtin_set(14, 40);
    // flip one conjugate representative into the lower half plane
    CoefficientSet flipped = s;
    flipped.poles[4] = flipped.poles[4].conj();
    flipped.residues[4] = flipped.residues[4].conj();
    std::string text = set_to_json_text(flipped);
    std::vector<std::string> warnings;
    CoefficientSet back = set_from_json_text(text, &warnings, 40);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("pole 4") != std::string::npos);
    CHECK(back.poles[4] == s.poles[4]);
    CHECK(back.residues[4] == s.residues[4]);
}

TEST_CASE("loader rejects structural violations") {
    CoefficientSet s = builtin_set(14, 40);
    CoefficientSet dup = s;
    dup.poles[1] = dup.poles[0];
    dup.residues[1] = dup.residues[0];
    std::string text = set_to_json_text(dup);
    CHECK_THROWS_AS(set_from_json_text(text, nullptr, 40), ValidationError);
    try {
        set_from_json_text(text, nullptr, 40);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("simple poles") != std::string::npos);
    }

    CHECK_THROWS_AS(set_from_json_text("{\"order\": 14}", nullptr, 40), ValidationError);
    try {
        set_from_json_text("{\"order\": 14}", nullptr, 40);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("alpha0") != std::string::npos);
    }
    CHECK_THROWS_AS(set_from_json_text("not json", nullptr, 40), ValidationError);
}
