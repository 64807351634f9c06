#ifndef QKOSZUL_FIXTURES_HPP
#define QKOSZUL_FIXTURES_HPP

#include "qkoszul/hilbert.hpp"
#include "qkoszul/koszul.hpp"
#include "qkoszul/parse.hpp"
#include "qkoszul/progroup.hpp"

#include <string>
#include <vector>

namespace qkoszul {

struct CatalogAlgebra {
    std::string name;
    QuadraticPresentation pres;
};

struct DemushkinEntry {
    unsigned p;
    std::size_t d;
    DemushkinCase c;
};

// Every one-relator normal form with d <= max_d, including the degenerate
// one-generator algebra over F_2.
inline std::vector<DemushkinEntry> demushkin_forms(std::size_t max_d)
{
    std::vector<DemushkinEntry> out;
    for (unsigned p : {2u, 3u, 5u})
        for (std::size_t d = 2; d <= max_d; d += 2)
            out.push_back({p, d, DemushkinCase::a});
    for (std::size_t d = 2; d <= max_d; d += 2)
        out.push_back({2, d, DemushkinCase::b});
    for (std::size_t d = 1; d <= max_d; d += 2)
        out.push_back({2, d, DemushkinCase::c});
    return out;
}

inline std::string demushkin_name(const DemushkinEntry& e)
{
    return "demushkin-" + std::string(1, demushkin_case_letter(e.c)) + "(p=" +
           std::to_string(e.p) + ",d=" + std::to_string(e.d) + ")";
}

inline std::string dims_brief(const GradedDims& dims)
{
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i)
        out += (i ? " " : "") + std::to_string(dims[i]);
    return out;
}

// The standing examples every bounded Koszulity check must certify.
inline std::vector<CatalogAlgebra> catalog_algebras()
{
    std::vector<CatalogAlgebra> out;
    for (unsigned p : {2u, 3u, 5u}) {
        const std::string ps = "p=" + std::to_string(p);
        for (std::size_t d = 1; d <= 4; ++d) {
            out.push_back({"free(" + ps + ",d=" + std::to_string(d) + ")", free_presentation(p, d)});
            out.push_back(
                {"trivial(" + ps + ",d=" + std::to_string(d) + ")", trivial_presentation(p, d)});
        }
        for (std::size_t d = 2; d <= 4; ++d) {
            out.push_back(
                {"symmetric(" + ps + ",d=" + std::to_string(d) + ")", symmetric_presentation(p, d)});
            out.push_back(
                {"exterior(" + ps + ",d=" + std::to_string(d) + ")", exterior_presentation(p, d)});
        }
    }
    for (const auto& e : demushkin_forms(6))
        out.push_back({demushkin_name(e), demushkin_normal(e.p, e.d, e.c)});
    return out;
}

struct Theorem2Fixture {
    std::string name;
    std::string text;
};

inline std::vector<Theorem2Fixture> theorem2_fixtures()
{
    std::vector<Theorem2Fixture> out;
    auto gens = [](std::size_t d) {
        std::string g;
        for (std::size_t i = 1; i <= d; ++i)
            g += (i > 1 ? " x" : "x") + std::to_string(i);
        return g;
    };
    for (unsigned p : {3u, 5u})
        for (std::size_t d : {4u, 5u, 6u})
            out.push_back({"two-commutators(p=" + std::to_string(p) + ",d=" + std::to_string(d) + ")",
                           "p = " + std::to_string(p) + "\ngenerators = " + gens(d) +
                               "\nrelator = [x1,x2]*[x3,x4]\n"});
    out.push_back({"kz(q=0)", "p = 3\ngenerators = x1 x2 x3\nrelator = [x1,x2]\n"});
    out.push_back({"kz(q=3)", "p = 3\ngenerators = x1 x2 x3\nrelator = [x1,x2]*x3^-3\n"});
    out.push_back({"kz(q=9)", "p = 3\ngenerators = x1 x2 x3\nrelator = [x1,x2]*x3^-9\n"});
    out.push_back({"square(d=3)", "p = 2\ngenerators = x1 x2 x3\nrelator = x1^2\n"});
    out.push_back(
        {"square-commutator(d=4)", "p = 2\ngenerators = x1 x2 x3 x4\nrelator = x1^2*[x2,x3]\n"});
    out.push_back({"square-two-commutators(d=5)",
                   "p = 2\ngenerators = x1 x2 x3 x4 x5\nrelator = x1^2*[x1,x2]*[x3,x4]\n"});
    return out;
}

struct FixtureResult {
    std::string name;
    bool pass;
    std::string detail;
};

// Dual of a one-relator normal form: every product of dual generators is
// proportional to one class, with ratios read off the defining relation,
// and the dual dimensions collapse after degree 2 (d >= 2; the
// one-generator algebra dualizes to the polynomial ring instead).
inline FixtureResult check_demushkin_dual(const DemushkinEntry& e)
{
    FixtureResult res{"dual-of-" + demushkin_name(e), true, ""};
    QuadraticPresentation dual = quadratic_dual(demushkin_normal(e.p, e.d, e.c));
    RewritingSystem rs = rewriting_of(dual, 4);
    const unsigned p = e.p;
    const std::size_t d = e.d;

    GradedDims dims = graded_dims(dual, 4);
    GradedDims want = d == 1 ? GradedDims{1, 1, 1, 1, 1} : GradedDims{1, d, 1, 0, 0};
    if (dims != want) {
        res.pass = false;
        res.detail = "dual dims " + dims_brief(dims);
        return res;
    }

    // multiplication table: a_i a_j = lambda_{ij} z for the single
    // degree-2 class z, with lambda the coefficient matrix of the relation
    HomogeneousPoly f = demushkin_relation(p, d, e.c);
    auto z = rs.normal_monomials(2);
    if (z.size() != 1) {
        res.pass = false;
        res.detail = "dual degree-2 basis has size " + std::to_string(z.size());
        return res;
    }
    unsigned scale = 0; // proportionality factor, fixed at the first pairing slot
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j) {
            HomogeneousPoly prod = rs.reduce(hp_monomial(p, Monomial({i, j})));
            unsigned got = prod.coeff(z.front());
            unsigned lam = f.coeff(Monomial({i, j}));
            if (lam != 0 && scale == 0) {
                if (got == 0) {
                    res.pass = false;
                    res.detail = "vanishing product at a pairing slot";
                    return res;
                }
                scale = fp_mul(got, fp_inv(lam, p), p);
            }
            unsigned expect = fp_mul(lam, scale == 0 ? 1 : scale, p);
            if (got != expect) {
                res.pass = false;
                res.detail = "product a" + std::to_string(i + 1) + "*a" + std::to_string(j + 1) +
                             " off the cup-product table";
                return res;
            }
        }
    return res;
}

// Graded dimensions of a one-relator normal form follow the two-term
// recursion a_n = d a_{n-1} - a_{n-2} (d >= 2).
inline FixtureResult check_demushkin_dims(const DemushkinEntry& e, std::size_t N = 8)
{
    FixtureResult res{"dims-of-" + demushkin_name(e), true, ""};
    GradedDims dims = graded_dims(demushkin_normal(e.p, e.d, e.c), N);
    ZSeries want = e.d == 1 ? ZSeries{1, 1} : demushkin_series(e.d, N);
    want.resize(N + 1, 0);
    for (std::size_t n = 0; n <= N; ++n)
        if (want[n] < 0 || dims[n] != static_cast<unsigned long long>(want[n])) {
            res.pass = false;
            res.detail = "degree " + std::to_string(n) + ": got " + std::to_string(dims[n]) +
                         ", want " + std::to_string(want[n]);
            return res;
        }
    return res;
}

// Full bounded Koszulity evidence: a PBW order certifies, and both bounded
// tests agree.
inline FixtureResult check_koszul_catalog(const std::string& name, const QuadraticPresentation& a,
                                          std::size_t hilbert_deg = 8, std::size_t exact_deg = 6)
{
    FixtureResult res{"koszul-" + name, true, ""};
    KoszulVerdict v = koszul_verdict(a);
    if (v.status != KoszulStatus::certified_koszul) {
        res.pass = false;
        res.detail = "verdict " + to_string(v.status);
        return res;
    }
    if (auto w = hilbert_duality_test(a, hilbert_deg)) {
        res.pass = false;
        res.detail = "series duality fails at degree " + std::to_string(*w);
        return res;
    }
    if (auto w = koszul_complex_exactness(a, exact_deg)) {
        res.pass = false;
        res.detail = "complex fails at (" + std::to_string(w->first) + "," +
                     std::to_string(w->second) + ")";
        return res;
    }
    return res;
}

inline FixtureResult evaluate_theorem2(const std::string& name, const CaseReport& rep)
{
    FixtureResult res{"theorem2-" + name, true, ""};
    if (!rep.duality_equal)
        res.detail += "dual(gr) != h-model; ";
    if (!rep.dims_match)
        res.detail += "gr dims off the series prediction; ";
    if (!rep.h_dims_shape_ok)
        res.detail += "cohomology dims do not vanish as expected; ";
    if (rep.gr_verdict.status != KoszulStatus::certified_koszul)
        res.detail += "gr verdict " + to_string(rep.gr_verdict.status) + "; ";
    if (rep.h_verdict.status != KoszulStatus::certified_koszul)
        res.detail += "h verdict " + to_string(rep.h_verdict.status) + "; ";
    res.pass = res.detail.empty();
    return res;
}

inline FixtureResult check_theorem2(const Theorem2Fixture& fx, const AnalyzeConfig& cfg = {})
{
    try {
        CaseReport rep = verify_theorem2(parse_presentation(fx.text), cfg);
        return evaluate_theorem2(fx.name, rep);
    } catch (const std::exception& ex) {
        return FixtureResult{"theorem2-" + fx.name, false, ex.what()};
    }
}

inline std::vector<FixtureResult> run_catalog(std::size_t hilbert_deg = 8, std::size_t exact_deg = 6,
                                              std::size_t dims_deg = 8)
{
    std::vector<FixtureResult> out;
    for (const auto& e : demushkin_forms(6)) {
        out.push_back(check_demushkin_dual(e));
        out.push_back(check_demushkin_dims(e, dims_deg));
    }
    for (const auto& alg : catalog_algebras())
        out.push_back(check_koszul_catalog(alg.name, alg.pres, hilbert_deg, exact_deg));
    AnalyzeConfig cfg;
    cfg.koszul.hilbert_degree = hilbert_deg;
    cfg.koszul.exactness_degree = exact_deg;
    for (const auto& fx : theorem2_fixtures()) {
        try {
            CaseReport rep = verify_theorem2(parse_presentation(fx.text), cfg);
            out.push_back(evaluate_theorem2(fx.name, rep));
            out.push_back(
                check_koszul_catalog("gr-of-" + fx.name, rep.gr.normalized, hilbert_deg, exact_deg));
            out.push_back(check_koszul_catalog("h-of-" + fx.name, rep.h_model, hilbert_deg, exact_deg));
        } catch (const std::exception& ex) {
            out.push_back(FixtureResult{"theorem2-" + fx.name, false, ex.what()});
        }
    }
    return out;
}

} // namespace qkoszul

#endif
