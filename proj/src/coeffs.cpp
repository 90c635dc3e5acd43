#include "cram/coeffs.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cram {

namespace {

struct Entry {
    const char* re;
    const char* im;
};

// Order 14, 20 significant digits. One representative per conjugate pair.
constexpr Entry kPoles14[] = {
    {"-8.8977731864688888199e0", "+1.6630982619902085304e1"},
    {"-3.7032750494234480603e0", "+1.3656371871483268171e1"},
    {"-0.2087586382501301251e0", "+1.0991260561901260913e1"},
    {"+3.9933697105785685194e0", "+6.0048316422350373178e0"},
    {"+5.0893450605806245066e0", "+3.5888240290270065102e0"},
    {"+5.6231425727459771248e0", "+1.1940690463439669766e0"},
    {"+2.2697838292311127097e0", "+8.4617379730402214019e0"},
};
constexpr Entry kResidues14[] = {
    {"-7.1542880635890672853e-5", "+1.4361043349541300111e-4"},
    {"+9.4390253107361688779e-3", "-1.7184791958483017511e-2"},
    {"-3.7636003878226968717e-1", "+3.3518347029450104214e-1"},
    {"-2.3498232091082701191e1", "-5.8083591297142074004e0"},
    {"+4.6933274488831293047e1", "+4.5643649768827760791e1"},
    {"-2.7875161940145646468e1", "-1.0214733999056451434e2"},
    {"+4.8071120988325088907e0", "-1.3209793837428723881e0"},
};
constexpr const char* kAlpha0_14 = "+1.8321743782540412751e-14";

// Order 16, same conventions.
constexpr Entry kPoles16[] = {
    {"-1.0843917078696988026e1", "+1.9277446167181652284e1"},
    {"-5.2649713434426468895e0", "+1.6220221473167927305e1"},
    {"+5.9481522689511774808e0", "+3.5874573620183222829e0"},
    {"+3.5091036084149180974e0", "+8.4361989858843750826e0"},
    {"+6.4161776990994341923e0", "+1.1941223933701386874e0"},
    {"+1.4193758971856659786e0", "+1.0925363484496722585e1"},
    {"+4.9931747377179963991e0", "+5.9968817136039422260e0"},
    {"-1.4139284624888862114e0", "+1.3497725698892745389e1"},
};
constexpr Entry kResidues16[] = {
    {"-5.0901521865224915650e-7", "-2.4220017652852287970e-5"},
    {"+2.1151742182466030907e-4", "+4.3892969647380673918e-3"},
    {"+1.1339775178483930527e2", "+1.0194721704215856450e2"},
    {"+1.5059585270023467528e1", "-5.7514052776421819979e0"},
    {"-6.4500878025539646595e1", "-2.2459440762652096056e2"},
    {"-1.4793007113557999718e0", "+1.7686588323782937906e0"},
    {"-6.2518392463207918892e1", "-1.1190391094283228480e1"},
    {"+4.1023136835410021273e-2", "-1.5743466173455468191e-1"},
};
constexpr const char* kAlpha0_16 = "+2.1248537104952237488e-16";

CoefficientSet make_builtin(int order, const Entry* poles, const Entry* residues,
                            const char* alpha0, const char* label, int digits) {
    CoefficientSet s;
    s.order = order;
    s.alpha0 = XReal::parse(alpha0, digits);
    s.alpha0_im = XReal(0, digits);
    s.label = label;
    for (int j = 0; j < order / 2; ++j) {
        s.poles.push_back(XComplex::parse(poles[j].re, poles[j].im, digits));
        s.residues.push_back(XComplex::parse(residues[j].re, residues[j].im, digits));
    }
    return s;
}

} // namespace

int CoefficientSet::digits() const {
    int d = alpha0.digits();
    for (const auto& p : poles) d = std::max(d, p.digits());
    for (const auto& r : residues) d = std::max(d, r.digits());
    return d;
}

CoefficientSet builtin_set(int order, int digits) {
    if (digits < XReal::kMinDigits) digits = XReal::kMinDigits;
    switch (order) {
        case 14:
            return make_builtin(14, kPoles14, kResidues14, kAlpha0_14,
                                "builtin order 14", digits);
        case 16:
            return make_builtin(16, kPoles16, kResidues16, kAlpha0_16,
                                "builtin order 16", digits);
        default:
            throw DomainError("builtin_set: unsupported order " +
                              std::to_string(order) + "; supported orders: 14, 16");
    }
}

CoefficientSet truncate_set(const CoefficientSet& set, int digits_kept) {
    if (digits_kept < 1 || digits_kept > 20)
        throw DomainError("truncate_set: digits kept must be in [1, 20]");
    CoefficientSet s;
    s.order = set.order;
    s.alpha0 = set.alpha0.round_sig(digits_kept);
    s.alpha0_im = set.alpha0_im;
    s.label = set.label + " truncated to " + std::to_string(digits_kept) + " digits";
    s.poles.reserve(set.poles.size());
    s.residues.reserve(set.residues.size());
    for (const auto& p : set.poles) s.poles.push_back(p.round_sig(digits_kept));
    for (const auto& r : set.residues) s.residues.push_back(r.round_sig(digits_kept));
    return s;
}

bool ValidationReport::all_pass() const {
    for (const auto& i : items)
        if (!i.pass) return false;
    return true;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& i : items)
        os << (i.pass ? "pass" : "FAIL") << "  " << i.rule
           << (i.detail.empty() ? "" : ": " + i.detail) << "\n";
    return os.str();
}

ValidationReport validate_set(const CoefficientSet& set) {
    ValidationReport rep;
    auto add = [&](const std::string& rule, bool pass, const std::string& detail = "") {
        rep.items.push_back({rule, pass, detail});
    };

    add("order is even and positive", set.order > 0 && set.order % 2 == 0,
        "order = " + std::to_string(set.order));

    size_t half = set.order > 0 ? (size_t)set.order / 2 : 0;
    bool len_ok = set.poles.size() == half && set.residues.size() == half;
    add("length match (poles, residues == k/2)", len_ok,
        "poles = " + std::to_string(set.poles.size()) +
            ", residues = " + std::to_string(set.residues.size()) +
            ", k/2 = " + std::to_string(half));

    std::string bad;
    bool im_ok = true;
    for (size_t j = 0; j < set.poles.size(); ++j)
        if (set.poles[j].im.sign() <= 0) {
            im_ok = false;
            bad += (bad.empty() ? "" : ", ") + std::to_string(j);
        }
    add("poles have Im > 0", im_ok, bad.empty() ? "" : "indices " + bad);

    add("alpha0 must be real", set.alpha0_im.is_zero());

    if (set.order == 14 || set.order == 16) {
        XReal cap = XReal::pow10(set.order == 14 ? -13 : -15, 30);
        bool range_ok = set.alpha0.sign() > 0 && set.alpha0 < cap;
        add("alpha0 range (order " + std::to_string(set.order) + ")", range_ok,
            "alpha0 = " + set.alpha0.str());
    }

    bad.clear();
    bool distinct = true;
    for (size_t a = 0; a < set.poles.size(); ++a)
        for (size_t b = a + 1; b < set.poles.size(); ++b) {
            XReal d2 = (set.poles[a] - set.poles[b]).norm2();
            XReal scale2 = set.poles[a].norm2();
            if (d2 <= scale2.scaled_pow10(-36)) {
                distinct = false;
                bad += (bad.empty() ? "" : ", ") +
                       ("(" + std::to_string(a) + "," + std::to_string(b) + ")");
            }
        }
    add("simple poles (pairwise distinct)", distinct,
        bad.empty() ? "" : "coincident pairs " + bad);

    return rep;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

using json = nlohmann::ordered_json;

std::string set_to_json_text(const CoefficientSet& set) {
    json j;
    j["order"] = set.order;
    j["alpha0"] = set.alpha0.str();
    json poles = json::array(), residues = json::array();
    for (const auto& p : set.poles)
        poles.push_back({{"re", p.re.str()}, {"im", p.im.str()}});
    for (const auto& r : set.residues)
        residues.push_back({{"re", r.re.str()}, {"im", r.im.str()}});
    j["poles"] = poles;
    j["residues"] = residues;
    j["label"] = set.label;
    return j.dump(2) + "\n";
}

namespace {

XReal parse_field(const json& j, const std::string& where, int digits) {
    if (!j.is_string())
        throw ValidationError("coefficient file: field \"" + where +
                              "\" must be a decimal string");
    try {
        return XReal::parse(j.get<std::string>(), digits);
    } catch (const ParseError& e) {
        throw ValidationError("coefficient file: field \"" + where + "\": " + e.what());
    }
}

std::vector<XComplex> parse_pairs(const json& j, const std::string& where, int digits) {
    if (!j.is_array())
        throw ValidationError("coefficient file: field \"" + where +
                              "\" must be an array");
    std::vector<XComplex> out;
    int idx = 0;
    for (const auto& e : j) {
        std::string at = where + "[" + std::to_string(idx++) + "]";
        if (!e.is_object() || !e.contains("re") || !e.contains("im"))
            throw ValidationError("coefficient file: field \"" + at +
                                  "\" must be {\"re\", \"im\"}");
        out.emplace_back(parse_field(e["re"], at + ".re", digits),
                         parse_field(e["im"], at + ".im", digits));
    }
    return out;
}

} // namespace

CoefficientSet set_from_json_text(const std::string& text,
                                  std::vector<std::string>* warnings, int digits) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ValidationError(std::string("coefficient file: not valid JSON: ") +
                              e.what());
    }
    for (const char* field : {"order", "alpha0", "poles", "residues"})
        if (!j.contains(field))
            throw ValidationError(std::string("coefficient file: missing field \"") +
                                  field + "\"");
    CoefficientSet s;
    if (!j["order"].is_number_integer())
        throw ValidationError("coefficient file: field \"order\" must be an integer");
    s.order = j["order"].get<int>();
    // alpha0 is normally a plain string; tolerate {"re","im"} and let
    // validation flag a nonzero imaginary part
    if (j["alpha0"].is_object() && j["alpha0"].contains("re")) {
        s.alpha0 = parse_field(j["alpha0"]["re"], "alpha0.re", digits);
        s.alpha0_im = j["alpha0"].contains("im")
                          ? parse_field(j["alpha0"]["im"], "alpha0.im", digits)
                          : XReal(0, digits);
    } else {
        s.alpha0 = parse_field(j["alpha0"], "alpha0", digits);
        s.alpha0_im = XReal(0, digits);
    }
    s.poles = parse_pairs(j["poles"], "poles", digits);
    s.residues = parse_pairs(j["residues"], "residues", digits);
    s.label = j.contains("label") && j["label"].is_string()
                  ? j["label"].get<std::string>()
                  : "";

    // normalize conjugate representatives to the upper half plane
    for (size_t k = 0; k < s.poles.size() && k < s.residues.size(); ++k) {
        if (s.poles[k].im.sign() < 0) {
            s.poles[k] = s.poles[k].conj();
            s.residues[k] = s.residues[k].conj();
            if (warnings)
                warnings->push_back("pole " + std::to_string(k) +
                                    " given with Im < 0; conjugated the pole and "
                                    "its residue");
        }
    }

    ValidationReport rep = validate_set(s);
    if (!rep.all_pass())
        throw ValidationError("coefficient file: validation failed\n" + rep.summary());
    return s;
}

LoadResult load_set(const std::string& path, int digits) {
    std::ifstream in(path);
    if (!in) throw Error("load_set: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    LoadResult r;
    r.set = set_from_json_text(ss.str(), &r.warnings, digits);
    return r;
}

void save_set(const CoefficientSet& set, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("save_set: cannot open " + path + " for writing");
    out << set_to_json_text(set);
    if (!out) throw Error("save_set: write failed for " + path);
}

} // namespace cram
