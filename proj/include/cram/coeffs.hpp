#pragma once

#include <string>
#include <vector>

#include "cram/xcomplex.hpp"

namespace cram {

/// One rational-approximation order in partial-fraction form: the limit at
/// infinity alpha0 plus k/2 conjugate-representative poles (Im > 0) with
/// their residues, paired by index.  Immutable once built; safe to share.
struct CoefficientSet {
    int order = 0;                    // k, even
    XReal alpha0;
    std::vector<XComplex> poles;      // k/2 entries, Im > 0
    std::vector<XComplex> residues;   // matched to poles by index
    std::string label;

    // Only the JSON loader ever sets this; a file may carry alpha0 as an
    // object with an imaginary part, which validate_set then rejects.
    XReal alpha0_im;

    int digits() const;
};

/// Embedded order-14 and order-16 coefficient sets (20 significant digits),
/// parsed at the requested working precision (>= 30).
CoefficientSet builtin_set(int order, int digits = XReal::kDefaultDigits);

/// Round every coefficient component independently to d significant decimal
/// digits (half away from zero).  Pairing and order are preserved.
CoefficientSet truncate_set(const CoefficientSet& set, int digits_kept);

struct ValidationItem {
    std::string rule;
    bool pass = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool all_pass() const;
    std::string summary() const;
};

ValidationReport validate_set(const CoefficientSet& set);

struct LoadResult {
    CoefficientSet set;
    std::vector<std::string> warnings;
};

/// JSON round-trip.  Numbers are decimal strings so stored digits survive.
/// load_set normalizes poles given with Im < 0 by conjugating the pole and
/// its residue (with a warning) and throws ValidationError when the loaded
/// set violates the structural invariants.
LoadResult load_set(const std::string& path, int digits = XReal::kDefaultDigits);
void save_set(const CoefficientSet& set, const std::string& path);

CoefficientSet set_from_json_text(const std::string& text,
                                  std::vector<std::string>* warnings,
                                  int digits = XReal::kDefaultDigits);
std::string set_to_json_text(const CoefficientSet& set);

} // namespace cram
