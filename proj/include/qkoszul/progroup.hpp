#ifndef QKOSZUL_PROGROUP_HPP
#define QKOSZUL_PROGROUP_HPP

#include "qkoszul/errors.hpp"
#include "qkoszul/koszul.hpp"
#include "qkoszul/quadratic.hpp"
#include "qkoszul/series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qkoszul {

// One-relator pro-p presentation <x_1..x_d | r>.
struct GroupPresentation {
    unsigned p;
    std::size_t d;
    std::vector<std::string> names;
    RelatorWord relator;
};

// Invariant q of the abelianization Z_p/q x Z_p^(d-1): zero when every
// exponent sum vanishes, otherwise p^v with v the least p-adic valuation
// of the exponent sums.  A unit exponent sum means the presentation is
// not minimal.
inline long long abelianization_q(const GroupPresentation& g)
{
    const auto e = exponent_vector(g.relator, g.d);
    long long min_v = -1;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        long long x = e[i] < 0 ? -e[i] : e[i];
        long long v = 0;
        while (x % g.p == 0) {
            x /= g.p;
            ++v;
        }
        if (v == 0)
            throw HypothesisError("presentation is not minimal: the exponent sum of " +
                                  g.names.at(i) + " is a unit modulo " + std::to_string(g.p));
        if (min_v < 0 || v < min_v)
            min_v = v;
    }
    if (min_v < 0)
        return 0;
    long long q = 1;
    for (long long k = 0; k < min_v; ++k)
        q *= g.p;
    return q;
}

// Magnus expansion of the relator and its lowest nonzero homogeneous
// component.  Depth 1 means the presentation is not minimal; a relator
// trivial to the truncation depth is rejected with a hint to raise it.
inline InitialForm initial_form(const GroupPresentation& g, std::size_t depth = 3)
{
    if (depth < 1)
        throw std::invalid_argument("expansion depth must be at least 1");
    TruncatedSeries s = magnus_expand(g.relator, g.d, depth, g.p);
    auto init = series_initial_form(s);
    if (!init)
        throw HypothesisError("relator is trivial to depth " + std::to_string(depth) +
                              "; the analysis needs a relator in F_(2) with depth exactly 2 "
                              "(raise --depth to inspect deeper relators)");
    if (init->degree == 1)
        throw HypothesisError("presentation is not minimal: the relator has depth 1 "
                              "(it lies outside F_(2))");
    return *init;
}

// A degree-2 initial form makes the group mild exactly when it carries a
// mixed monomial X_i X_j with i != j, i.e. it is not a sum of squares.
inline bool mildness_check(const HomogeneousPoly& rho)
{
    if (rho.degree() != 2)
        throw std::invalid_argument("mildness test needs a degree-2 form");
    for (const auto& [m, c] : rho.terms())
        if (m.word[0] != m.word[1])
            return true;
    return false;
}

enum class CaseTag { q_ne_2, q2_n_even, q2_n_odd, p2_n1 };

inline std::string to_string(CaseTag t)
{
    switch (t) {
    case CaseTag::q_ne_2: return "q!=2";
    case CaseTag::q2_n_even: return "q=2-n-even";
    case CaseTag::q2_n_odd: return "q=2-n-odd";
    case CaseTag::p2_n1: return "p2-n1";
    }
    return "?";
}

inline DemushkinCase demushkin_case_of(CaseTag t)
{
    switch (t) {
    case CaseTag::q_ne_2: return DemushkinCase::a;
    case CaseTag::q2_n_even: return DemushkinCase::b;
    case CaseTag::q2_n_odd:
    case CaseTag::p2_n1: return DemushkinCase::c;
    }
    throw std::logic_error("unreachable");
}

struct NormalizationResult {
    std::size_t n = 0; // dimension of the non-degenerate part
    std::size_t m = 0; // dimension of the radical
    CaseTag tag = CaseTag::q_ne_2;
    FpMatrix P; // invertible; substituting through P carries rho to the normal form
};

namespace detail {

using Vec = std::vector<unsigned>;

inline unsigned form_eval(const FpMatrix& C, const Vec& u, const Vec& v)
{
    const unsigned p = C.p();
    unsigned acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0)
            continue;
        unsigned row = 0;
        for (std::size_t j = 0; j < v.size(); ++j)
            row = fp_add(row, fp_mul(C.at(i, j), v[j], p), p);
        acc = fp_add(acc, fp_mul(u[i], row, p), p);
    }
    return acc;
}

inline void vec_axpy(Vec& u, unsigned factor, const Vec& v, unsigned p)
{
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = fp_add(u[i], fp_mul(factor, v[i], p), p);
}

// Standard basis vectors completing the radical to the whole space,
// scanned in coordinate order for determinism.
inline std::vector<Vec> radical_complement(const FpMatrix& radical, unsigned p, std::size_t d)
{
    std::vector<Vec> comp;
    FpMatrix span = radical;
    for (std::size_t i = 0; i < d; ++i) {
        FpMatrix trial(p, span.rows() + 1, d);
        for (std::size_t r = 0; r < span.rows(); ++r)
            trial.set_row(r, span.row(r));
        Vec e(d, 0);
        e[i] = 1;
        trial.set_row(span.rows(), e);
        if (rank(trial) > span.rows()) {
            comp.push_back(e);
            span = row_space_basis(trial);
        }
    }
    return comp;
}

} // namespace detail

// Reduce a degree-2 form arising as the initial form of a relator word to
// the one-relator normal form: split off the radical of the induced
// pairing, put hyperbolic structure on the complement, and for p = 2 with
// q = 2 normalize the square terms into the X1^2-headed shapes.  Returns
// the dimensions, the case, and the invertible substitution carrying the
// form exactly onto the normal-form polynomial.
inline NormalizationResult demushkin_normalize(const HomogeneousPoly& rho, std::size_t d,
                                               long long q)
{
    const unsigned p = rho.p();
    if (rho.degree() != 2)
        throw std::invalid_argument("normalization needs a degree-2 form");
    if (rho.is_zero())
        throw std::invalid_argument("normalization of the zero form");

    FpMatrix C(p, d, d);
    for (const auto& [m, c] : rho.terms()) {
        if (m.word[0] >= d || m.word[1] >= d)
            throw std::invalid_argument("form mentions a generator beyond d");
        C.at(m.word[0], m.word[1]) = c;
    }

    using detail::Vec;
    std::vector<Vec> basis; // new basis, non-degenerate part first
    CaseTag tag;
    std::size_t n = 0;

    if (p != 2) {
        for (std::size_t i = 0; i < d; ++i) {
            if (C.at(i, i) != 0)
                throw HypothesisError("square term in the initial form over an odd prime; "
                                      "such a form is not the initial form of any relator word");
            for (std::size_t j = i + 1; j < d; ++j)
                if (fp_add(C.at(i, j), C.at(j, i), p) != 0)
                    throw HypothesisError(
                        "the initial form is not alternating over an odd prime; it is not "
                        "the initial form of any relator word");
        }
        FpMatrix radical = nullspace(C);
        auto comp = detail::radical_complement(radical, p, d);
        // hyperbolic peeling of u^T C v on the complement
        std::vector<Vec> work = comp;
        while (!work.empty()) {
            Vec v = work.front();
            work.erase(work.begin());
            std::size_t wi = work.size();
            for (std::size_t k = 0; k < work.size(); ++k)
                if (detail::form_eval(C, v, work[k]) != 0) {
                    wi = k;
                    break;
                }
            if (wi == work.size())
                throw std::logic_error("alternating form degenerate outside its radical");
            Vec w = work[wi];
            work.erase(work.begin() + wi);
            const unsigned scale = fp_inv(detail::form_eval(C, v, w), p);
            for (auto& x : w)
                x = fp_mul(x, scale, p);
            for (auto& u : work) {
                // u |-> u - B(u,w) v + B(u,v) w with B(v,w) = 1
                detail::vec_axpy(u, fp_neg(detail::form_eval(C, u, w), p), v, p);
                detail::vec_axpy(u, detail::form_eval(C, u, v), w, p);
            }
            basis.push_back(v);
            basis.push_back(w);
        }
        n = basis.size();
        for (std::size_t r = 0; r < radical.rows(); ++r)
            basis.push_back(radical.row(r));
        tag = CaseTag::q_ne_2;
    } else {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                if (C.at(i, j) != C.at(j, i))
                    throw HypothesisError("the mixed part of the initial form is not symmetric "
                                          "over F_2; it is not the initial form of any relator word");
        bool has_square = false;
        for (std::size_t i = 0; i < d; ++i)
            if (C.at(i, i) != 0)
                has_square = true;
        if (q == 2 && !has_square)
            throw HypothesisError("q = 2 but the initial form has no square term; "
                                  "q is inconsistent with the quadratic part");
        if (q != 2 && has_square)
            throw HypothesisError("the initial form has a square term but q != 2; "
                                  "q is inconsistent with the quadratic part");

        FpMatrix radical = nullspace(C);
        auto comp = detail::radical_complement(radical, p, d);

        if (q != 2) {
            // alternating case: hyperbolic pairs only (normal form (a))
            std::vector<Vec> work = comp;
            while (!work.empty()) {
                Vec v = work.front();
                work.erase(work.begin());
                std::size_t wi = work.size();
                for (std::size_t k = 0; k < work.size(); ++k)
                    if (detail::form_eval(C, v, work[k]) != 0) {
                        wi = k;
                        break;
                    }
                if (wi == work.size())
                    throw std::logic_error("alternating form degenerate outside its radical");
                Vec w = work[wi];
                work.erase(work.begin() + wi);
                for (auto& u : work) {
                    detail::vec_axpy(u, detail::form_eval(C, u, w), v, p);
                    detail::vec_axpy(u, detail::form_eval(C, u, v), w, p);
                }
                basis.push_back(v);
                basis.push_back(w);
            }
            n = basis.size();
            for (std::size_t r = 0; r < radical.rows(); ++r)
                basis.push_back(radical.row(r));
            tag = CaseTag::q_ne_2;
        } else {
            // q = 2: S(u,v) = u^T C v is symmetric and not alternating on
            // the complement.  Peel S(v,v) = 1 vectors, reduce the
            // alternating leftover to hyperbolic pairs, then fold surplus
            // diagonal vectors back into pairs three at a time.
            std::vector<Vec> diag;
            std::vector<Vec> work = comp;
            for (;;) {
                std::size_t pick = work.size();
                for (std::size_t k = 0; k < work.size(); ++k)
                    if (detail::form_eval(C, work[k], work[k]) != 0) {
                        pick = k;
                        break;
                    }
                if (pick == work.size())
                    break;
                Vec v = work[pick];
                work.erase(work.begin() + pick);
                for (auto& u : work)
                    detail::vec_axpy(u, detail::form_eval(C, u, v), v, p);
                diag.push_back(v);
            }
            std::vector<std::pair<Vec, Vec>> pairs;
            while (!work.empty()) {
                Vec v = work.front();
                work.erase(work.begin());
                std::size_t wi = work.size();
                for (std::size_t k = 0; k < work.size(); ++k)
                    if (detail::form_eval(C, v, work[k]) != 0) {
                        wi = k;
                        break;
                    }
                if (wi == work.size())
                    throw std::logic_error("alternating leftover degenerate outside the radical");
                Vec w = work[wi];
                work.erase(work.begin() + wi);
                for (auto& u : work) {
                    detail::vec_axpy(u, detail::form_eval(C, u, w), v, p);
                    detail::vec_axpy(u, detail::form_eval(C, u, v), w, p);
                }
                pairs.emplace_back(v, w);
            }
            // diag vectors f1,f2,f3 with Gram I_3 recombine into one
            // diagonal vector and one hyperbolic pair
            while (diag.size() > 2) {
                Vec f1 = diag[diag.size() - 3], f2 = diag[diag.size() - 2],
                    f3 = diag[diag.size() - 1];
                diag.resize(diag.size() - 3);
                Vec x = f1;
                detail::vec_axpy(x, 1, f2, p);
                detail::vec_axpy(x, 1, f3, p);
                Vec u = f1;
                detail::vec_axpy(u, 1, f2, p);
                Vec w = f2;
                detail::vec_axpy(w, 1, f3, p);
                diag.push_back(x);
                pairs.emplace_back(u, w);
            }
            n = diag.size() + 2 * pairs.size();
            if (diag.empty())
                throw std::logic_error("q = 2 form left no diagonal vector");
            if (n % 2 == 0) {
                // normal form (b): head (x1, x1 + x2) then pairs
                if (diag.size() != 2)
                    throw std::logic_error("parity mismatch in diagonal reduction");
                Vec g1 = diag[0];
                Vec g2 = diag[0];
                detail::vec_axpy(g2, 1, diag[1], p);
                basis.push_back(g1);
                basis.push_back(g2);
                tag = CaseTag::q2_n_even;
            } else {
                if (diag.size() != 1)
                    throw std::logic_error("parity mismatch in diagonal reduction");
                basis.push_back(diag[0]);
                tag = n == 1 ? CaseTag::p2_n1 : CaseTag::q2_n_odd;
            }
            for (const auto& [v, w] : pairs) {
                basis.push_back(v);
                basis.push_back(w);
            }
            for (std::size_t r = 0; r < radical.rows(); ++r)
                basis.push_back(radical.row(r));
        }
    }

    NormalizationResult res{n, d - n, tag, FpMatrix(p, d, d)};
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i)
            res.P.at(i, k) = basis[k][i];
    if (!is_invertible(res.P))
        throw std::logic_error("normalizing change of basis is singular");

    // the substitution must carry the form exactly onto the normal form
    FpMatrix target(p, d, d);
    {
        HomogeneousPoly f = demushkin_relation(p, n, demushkin_case_of(res.tag));
        for (const auto& [m, c] : f.terms())
            target.at(m.word[0], m.word[1]) = c;
    }
    FpMatrix got = mat_mul(mat_mul(transpose(res.P), C), res.P);
    if (!(got == target))
        throw std::logic_error("normalization did not reach the normal form");
    return res;
}

// gr model: the quadratic quotient by the initial form, its image in the
// normalized basis, and the certified splitting into a one-relator normal
// form block and a free block.
struct GrModel {
    QuadraticPresentation raw;           // F_p<X>/<rho> in the input basis
    QuadraticPresentation normalized;    // after the normalizing substitution
    QuadraticPresentation decomposition; // normal-form block ⊔ free block
};

inline GrModel build_gr(const HomogeneousPoly& rho, std::size_t d, const NormalizationResult& norm,
                        bool mild)
{
    if (!mild && norm.tag != CaseTag::p2_n1)
        throw HypothesisError("the initial form is a sum of squares on more than one generator; "
                              "the graded algebra of such a group is not described here");
    const unsigned p = rho.p();
    QuadraticPresentation raw = presentation_from_relations(p, d, {rho});
    QuadraticPresentation normalized = apply_basis_change(raw, norm.P);
    QuadraticPresentation dec = free_product(
        demushkin_normal(p, norm.n, demushkin_case_of(norm.tag)), free_presentation(p, norm.m));
    if (!equal_presentations(normalized, dec))
        throw std::logic_error("normalized graded algebra does not match its splitting");
    return GrModel{std::move(raw), std::move(normalized), std::move(dec)};
}

// Cohomology model: the n-generator algebra whose products are read off
// the cup-product table of the case (all products proportional to one
// class), in direct product with a trivial block on the radical.
inline QuadraticPresentation build_cohomology(unsigned p, std::size_t n, std::size_t m, CaseTag tag)
{
    HomogeneousPoly f = demushkin_relation(p, n, demushkin_case_of(tag));
    FpMatrix lambda(p, 1, n * n);
    for (const auto& [mono, c] : f.terms())
        lambda.at(0, mono.word[0] * n + mono.word[1]) = c;
    QuadraticPresentation top(p, n, annihilator(lambda, n * n), default_names(n, "chi"));
    QuadraticPresentation rad = trivial_presentation(p, m);
    QuadraticPresentation h = direct_product(top, rad);
    return h.with_labels(default_names(n + m, "chi"));
}

// --- decomposition labels ---

inline std::string demushkin_part_label(unsigned p, std::size_t n, CaseTag tag)
{
    const std::string fp = "F_" + std::to_string(p);
    if (n == 1)
        return fp + "[X1]/(X1^2)";
    if (n == 2 && tag == CaseTag::q_ne_2)
        return fp + "[X1,X2]";
    std::string s = "Demushkin_" + std::string(1, demushkin_case_letter(demushkin_case_of(tag))) +
                    "(X1..X" + std::to_string(n) + ")";
    return fp + " " + s;
}

inline std::string free_part_label(unsigned p, std::size_t n, std::size_t d)
{
    const std::string fp = "F_" + std::to_string(p);
    if (n == d)
        return fp; // empty free part
    if (d - n == 1)
        return fp + "[X" + std::to_string(d) + "]";
    return fp + "<X" + std::to_string(n + 1) + "..X" + std::to_string(d) + ">";
}

// --- full pipeline ---

struct AnalyzeConfig {
    std::size_t depth = 3;       // Magnus truncation
    std::size_t dims_degree = 8; // graded-dimension comparison degree
    KoszulConfig koszul;
};

struct CaseReport {
    GroupPresentation input;
    AnalyzeConfig config;
    long long q = 0;
    bool p2_hypothesis_ambiguous = false; // p = 2 with a nonzero even exponent sum
    std::size_t depth = 0;
    HomogeneousPoly rho;
    bool mild = false;
    NormalizationResult norm;
    GrModel gr;
    QuadraticPresentation h_model;
    std::string demushkin_label, free_label;
    GradedDims gr_dims;
    ZSeries gr_dims_expected;
    bool dims_match = false;
    GradedDims h_dims;
    bool h_dims_shape_ok = false;
    bool duality_equal = false;
    bool theorem2 = false;
    KoszulVerdict gr_verdict, h_verdict;

    CaseReport(GroupPresentation in, AnalyzeConfig cfg, HomogeneousPoly rho_,
               NormalizationResult norm_, GrModel gr_, QuadraticPresentation h)
        : input(std::move(in)), config(cfg), rho(std::move(rho_)), norm(std::move(norm_)),
          gr(std::move(gr_)), h_model(std::move(h))
    {
    }
};

inline CaseReport verify_theorem2(const GroupPresentation& g, const AnalyzeConfig& cfg = {})
{
    const unsigned p = g.p;
    long long q = abelianization_q(g);
    InitialForm init = initial_form(g, cfg.depth);
    if (init.degree != 2)
        throw HypothesisError("the relator has depth " + std::to_string(init.degree) +
                              "; the analysis requires a relator in F_(2) but not in F_(3)");
    bool mild = mildness_check(init.form);
    NormalizationResult norm = demushkin_normalize(init.form, g.d, q);
    GrModel gr = build_gr(init.form, g.d, norm, mild);
    QuadraticPresentation h = build_cohomology(p, norm.n, norm.m, norm.tag);

    CaseReport rep(g, cfg, init.form, norm, std::move(gr), std::move(h));
    rep.q = q;
    rep.p2_hypothesis_ambiguous = (p == 2 && q != 0);
    rep.depth = init.degree;
    rep.mild = mild;
    rep.demushkin_label = demushkin_part_label(p, rep.norm.n, rep.norm.tag);
    rep.free_label = free_part_label(p, rep.norm.n, g.d);

    // (1) the dual of the graded algebra is the cohomology model, exactly
    rep.duality_equal = equal_presentations(quadratic_dual(rep.gr.normalized), rep.h_model);
    rep.theorem2 = rep.duality_equal; // the splitting itself is certified in build_gr

    // (3) graded dimensions against the independent series prediction
    rep.gr_dims = graded_dims(rep.gr.raw, cfg.dims_degree);
    ZSeries dem = rep.norm.n == 1 ? ZSeries{1, 1} : demushkin_series(rep.norm.n, cfg.dims_degree);
    rep.gr_dims_expected =
        free_product_series(dem, free_series(rep.norm.m, cfg.dims_degree), cfg.dims_degree);
    rep.dims_match = true;
    for (std::size_t k = 0; k <= cfg.dims_degree; ++k)
        if (rep.gr_dims_expected[k] < 0 ||
            rep.gr_dims[k] != static_cast<unsigned long long>(rep.gr_dims_expected[k]))
            rep.dims_match = false;

    // cohomology dimensions: zero above degree 2, except the p2-n1 case
    // where one class survives in every degree
    rep.h_dims = graded_dims(rep.h_model, cfg.dims_degree);
    rep.h_dims_shape_ok = true;
    for (std::size_t k = 3; k <= cfg.dims_degree; ++k) {
        unsigned long long want = rep.norm.tag == CaseTag::p2_n1 ? 1 : 0;
        if (rep.h_dims[k] != want)
            rep.h_dims_shape_ok = false;
    }

    // (4) Koszulity of both sides
    rep.gr_verdict = koszul_verdict(rep.gr.normalized, cfg.koszul);
    rep.h_verdict = koszul_verdict(rep.h_model, cfg.koszul);
    return rep;
}

} // namespace qkoszul

#endif
