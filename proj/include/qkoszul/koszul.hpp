#ifndef QKOSZUL_KOSZUL_HPP
#define QKOSZUL_KOSZUL_HPP

#include "qkoszul/hilbert.hpp"
#include "qkoszul/quadratic.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qkoszul {

// Small deterministic generator (splitmix64) so order searches and report
// output are reproducible byte for byte across platforms.
struct DetRng {
    std::uint64_t state;

    explicit DetRng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::size_t below(std::size_t n) { return n ? static_cast<std::size_t>(next() % n) : 0; }

    template <typename T> void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }
};

// --- PBW certificates ---

// Evidence that the quadratic relations form a confluent rewriting system
// under some generator order: every degree-3 overlap of two leading words
// resolves, and no rule of degree 3 appears.  Two quadratic leading words
// can only overlap in a word of length 3, so such a system is confluent in
// every degree, its normal words form a basis, and the algebra is Koszul.
struct PbwCertificate {
    std::vector<unsigned> order; // order[k] = original generator at position k
    std::size_t rule_count = 0;
    std::vector<std::string> rules;    // "lead -> tail" in the reordered basis
    std::vector<std::string> critical; // resolved overlap words with their normal form
};

inline QuadraticPresentation permute_generators(const QuadraticPresentation& a,
                                                const std::vector<unsigned>& order)
{
    const std::size_t d = a.generator_count();
    FpMatrix omega(a.p(), a.relation_count(), d * d);
    for (std::size_t r = 0; r < a.relation_count(); ++r)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                omega.at(r, i * d + j) = a.omega().at(r, order[i] * d + order[j]);
    std::vector<std::string> labels(d);
    for (std::size_t i = 0; i < d; ++i)
        labels[i] = a.labels()[order[i]];
    return QuadraticPresentation(a.p(), d, omega, std::move(labels));
}

inline std::optional<PbwCertificate> pbw_certificate(const QuadraticPresentation& a,
                                                     const std::vector<std::vector<unsigned>>& orders)
{
    for (const auto& order : orders) {
        QuadraticPresentation perm = permute_generators(a, order);
        RewritingSystem rs = rewriting_of(perm, 3);
        if (!rs.quadratic_only())
            continue;
        PbwCertificate cert;
        cert.order = order;
        auto rules = rs.rules();
        cert.rule_count = rules.size();
        for (const auto& rule : rules)
            cert.rules.push_back(monomial_to_string(rule.lead, perm.labels()) + " -> " +
                                 to_string(rule.tail, perm.labels()));
        // critical words: both halves are leading words; record the common
        // normal form both one-step rewrites reduce to
        for (const auto& r1 : rules)
            for (const auto& r2 : rules) {
                if (r1.lead.word[1] != r2.lead.word[0])
                    continue;
                Monomial w(
                    {r1.lead.word[0], r1.lead.word[1], r2.lead.word[1]});
                HomogeneousPoly route1 =
                    rs.reduce(hp_sandwich(Monomial{}, r1.tail, Monomial({r2.lead.word[1]})));
                HomogeneousPoly route2 =
                    rs.reduce(hp_sandwich(Monomial({r1.lead.word[0]}), r2.tail, Monomial{}));
                if (!(route1 == route2))
                    throw std::logic_error("certified system has an unresolved overlap");
                cert.critical.push_back(monomial_to_string(w, perm.labels()) + " => " +
                                        to_string(route1, perm.labels()));
            }
        return cert;
    }
    return std::nullopt;
}

inline std::vector<std::vector<unsigned>> default_order_pool(std::size_t d, std::size_t random_orders,
                                                             std::uint64_t seed)
{
    std::vector<std::vector<unsigned>> pool;
    std::vector<unsigned> identity(d);
    std::iota(identity.begin(), identity.end(), 0u);
    pool.push_back(identity);
    std::vector<unsigned> rev = identity;
    std::reverse(rev.begin(), rev.end());
    if (d > 1)
        pool.push_back(rev);
    DetRng rng(seed);
    for (std::size_t k = 0; k < random_orders; ++k) {
        std::vector<unsigned> perm = identity;
        rng.shuffle(perm);
        if (std::find(pool.begin(), pool.end(), perm) == pool.end())
            pool.push_back(perm);
    }
    return pool;
}

// --- Hilbert series duality test ---

// Necessary condition for Koszulity: h_A(t) * h_{A!}(-t) = 1.  A violation
// proves the algebra is not Koszul; passing is evidence only.  Returns the
// first degree where the convolution fails, if any.
inline std::optional<std::size_t> hilbert_duality_test(const QuadraticPresentation& a,
                                                       std::size_t N)
{
    GradedDims da = graded_dims(a, N);
    GradedDims dd = graded_dims(quadratic_dual(a), N);
    for (std::size_t n = 1; n <= N; ++n) {
        long long acc = 0;
        for (std::size_t k = 0; k <= n; ++k) {
            long long term = static_cast<long long>(dd[k]) * static_cast<long long>(da[n - k]);
            acc += (k % 2 == 0) ? term : -term;
        }
        if (acc != 0)
            return n;
    }
    return std::nullopt;
}

// --- Koszul complex exactness ---

namespace detail {

using SparseEntry = std::pair<std::uint32_t, unsigned>; // (row, value), rows sorted
using SparseCol = std::vector<SparseEntry>;

inline void axpy_col(SparseCol& dst, unsigned factor, const SparseCol& src, unsigned p)
{
    SparseCol out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, fp_mul(factor, src[j].second, p));
            ++j;
        } else {
            unsigned v = fp_add(dst[i].second, fp_mul(factor, src[j].second, p), p);
            if (v)
                out.emplace_back(dst[i].first, v);
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

// Rank by incremental elimination with a pivot dictionary.  Orientation is
// chosen so the short side bounds the pivot count, and the scan stops as
// soon as the rank saturates the short side.
inline std::size_t sparse_rank(const std::vector<SparseCol>& cols, std::size_t nrows, unsigned p)
{
    std::size_t ncols = cols.size();
    const std::vector<SparseCol>* work = &cols;
    std::vector<SparseCol> transposed;
    std::size_t short_side = std::min(nrows, ncols);
    if (nrows > ncols) {
        // keep columns as the long side: transpose
        transposed.resize(nrows);
        for (std::size_t c = 0; c < ncols; ++c)
            for (const auto& [r, v] : cols[c])
                transposed[r].emplace_back(static_cast<std::uint32_t>(c), v);
        work = &transposed;
    }
    std::map<std::uint32_t, SparseCol> pivots;
    for (const auto& col0 : *work) {
        if (pivots.size() == short_side)
            break;
        SparseCol col = col0;
        while (!col.empty()) {
            auto it = pivots.find(col.front().first);
            if (it == pivots.end())
                break;
            axpy_col(col, fp_neg(col.front().second, p), it->second, p);
        }
        if (col.empty())
            continue;
        const unsigned inv = fp_inv(col.front().second, p);
        for (auto& e : col)
            e.second = fp_mul(e.second, inv, p);
        pivots.emplace(col.front().first, std::move(col));
    }
    return pivots.size();
}

// Index lookup in a deglex-sorted list of normal monomials.
inline std::size_t index_of(const std::vector<Monomial>& sorted, const Monomial& m)
{
    auto it = std::lower_bound(sorted.begin(), sorted.end(), m);
    if (it == sorted.end() || !(*it == m))
        throw std::logic_error("monomial missing from normal basis");
    return static_cast<std::size_t>(it - sorted.begin());
}

} // namespace detail

// The complex K_i = A_{j-i} (x) (A!_i)^* per internal degree j, with the
// differential induced by right multiplication by generators on A and left
// multiplication on the dual side.  Exactness at every position for all
// j = 1..N is the bounded Koszulity check.
class KoszulComplex {
public:
    KoszulComplex(const QuadraticPresentation& a, std::size_t N)
        : p_(a.p()), d_(a.generator_count()), degree_(N), rsA_(rewriting_of(a, N)),
          rsB_(rewriting_of(quadratic_dual(a), N)), basisA_(N + 1), basisB_(N + 1),
          rightA_(N + 1), leftB_(N + 1)
    {
    }

    // First failing bidegree (cohomological position i, internal degree j),
    // if any.  Throws logic_error if the differential fails to square to
    // zero (a structural invariant, not a Koszulity failure).
    std::optional<std::pair<std::size_t, std::size_t>> first_failure()
    {
        for (std::size_t j = 1; j <= degree_; ++j) {
            auto bad = check_internal_degree(j);
            if (bad)
                return std::make_pair(*bad, j);
        }
        return std::nullopt;
    }

private:
    using Matrix = std::vector<detail::SparseCol>;

    const std::vector<Monomial>& basisA(std::size_t n)
    {
        if (!basisA_[n])
            basisA_[n] = rsA_.normal_monomials(n);
        return *basisA_[n];
    }
    const std::vector<Monomial>& basisB(std::size_t n)
    {
        if (!basisB_[n])
            basisB_[n] = rsB_.normal_monomials(n);
        return *basisB_[n];
    }

    using MulTable = std::vector<std::vector<std::vector<std::pair<std::uint32_t, unsigned>>>>;

    // rightA(n)[u][alpha]: reduce_A(u * X_alpha) against the basis of A_{n+1}
    const MulTable& rightA(std::size_t n)
    {
        if (!rightA_[n]) {
            const auto& src = basisA(n);
            const auto& dst = basisA(n + 1);
            MulTable t(src.size(), std::vector<std::vector<std::pair<std::uint32_t, unsigned>>>(d_));
            for (std::size_t u = 0; u < src.size(); ++u)
                for (unsigned alpha = 0; alpha < d_; ++alpha) {
                    HomogeneousPoly prod =
                        rsA_.reduce(hp_sandwich(src[u], hp_monomial(p_, Monomial({alpha})), Monomial{}));
                    for (const auto& [m, c] : prod.terms())
                        t[u][alpha].emplace_back(
                            static_cast<std::uint32_t>(detail::index_of(dst, m)), c);
                }
            rightA_[n] = std::move(t);
        }
        return *rightA_[n];
    }

    // leftB(n)[v][alpha]: reduce_B(a_alpha * v) against the basis of B_{n+1}
    const MulTable& leftB(std::size_t n)
    {
        if (!leftB_[n]) {
            const auto& src = basisB(n);
            const auto& dst = basisB(n + 1);
            MulTable t(src.size(), std::vector<std::vector<std::pair<std::uint32_t, unsigned>>>(d_));
            for (std::size_t v = 0; v < src.size(); ++v)
                for (unsigned alpha = 0; alpha < d_; ++alpha) {
                    HomogeneousPoly prod =
                        rsB_.reduce(hp_sandwich(Monomial({alpha}), hp_monomial(p_, src[v]), Monomial{}));
                    for (const auto& [m, c] : prod.terms())
                        t[v][alpha].emplace_back(
                            static_cast<std::uint32_t>(detail::index_of(dst, m)), c);
                }
            leftB_[n] = std::move(t);
        }
        return *leftB_[n];
    }

    // d_i: K_i -> K_{i-1}, both indexed row-major over (A-basis, B-basis):
    // (u (x) w^*) -> sum_alpha (u X_alpha) (x) (a_alpha . w^*), where the
    // dual-side action pairs w against a_alpha * v for v in B_{i-1}.
    Matrix differential(std::size_t j, std::size_t i)
    {
        const auto& ua = basisA(j - i);
        const auto& wb = basisB(i);
        const std::size_t nb_prev = basisB(i - 1).size();
        const auto& ra = rightA(j - i);
        const auto& lb = leftB(i - 1);

        // transpose of leftB against the target-degree basis:
        // pairs[w][alpha] = {(v, coeff of w in a_alpha * v)}
        std::vector<std::vector<std::vector<std::pair<std::uint32_t, unsigned>>>> pairs(
            wb.size(), std::vector<std::vector<std::pair<std::uint32_t, unsigned>>>(d_));
        for (std::size_t v = 0; v < nb_prev; ++v)
            for (unsigned alpha = 0; alpha < d_; ++alpha)
                for (const auto& [w, c] : lb[v][alpha])
                    pairs[w][alpha].emplace_back(static_cast<std::uint32_t>(v), c);

        Matrix cols(ua.size() * wb.size());
        std::map<std::uint32_t, unsigned> acc;
        for (std::size_t u = 0; u < ua.size(); ++u)
            for (std::size_t w = 0; w < wb.size(); ++w) {
                acc.clear();
                for (unsigned alpha = 0; alpha < d_; ++alpha)
                    for (const auto& [u2, ca] : ra[u][alpha])
                        for (const auto& [v, cb] : pairs[w][alpha]) {
                            std::uint32_t row =
                                u2 * static_cast<std::uint32_t>(nb_prev) + v;
                            unsigned& slot = acc[row];
                            slot = fp_add(slot, fp_mul(ca, cb, p_), p_);
                        }
                detail::SparseCol col;
                for (const auto& [row, val] : acc)
                    if (val)
                        col.emplace_back(row, val);
                cols[u * wb.size() + w] = std::move(col);
            }
        return cols;
    }

    static void compose_and_check_zero(const Matrix& d_outer, const Matrix& d_inner, unsigned p,
                                       std::size_t j)
    {
        for (const auto& col : d_inner) {
            std::map<std::uint32_t, unsigned> acc;
            for (const auto& [k, v] : col)
                for (const auto& [row, w] : d_outer[k]) {
                    unsigned& slot = acc[row];
                    slot = fp_add(slot, fp_mul(v, w, p), p);
                }
            for (const auto& [row, v] : acc)
                if (v)
                    throw std::logic_error("differential does not square to zero at internal degree " +
                                           std::to_string(j));
        }
    }

    std::optional<std::size_t> check_internal_degree(std::size_t j)
    {
        std::vector<std::size_t> dimK(j + 1);
        for (std::size_t i = 0; i <= j; ++i)
            dimK[i] = static_cast<std::size_t>(rsA_.normal_monomial_count(j - i)) *
                      static_cast<std::size_t>(rsB_.normal_monomial_count(i));

        std::vector<Matrix> ds(j + 1); // ds[i] = d_i for i >= 1
        for (std::size_t i = 1; i <= j; ++i)
            if (dimK[i] != 0 && dimK[i - 1] != 0)
                ds[i] = differential(j, i);
        for (std::size_t i = 1; i < j; ++i)
            if (!ds[i].empty() && !ds[i + 1].empty())
                compose_and_check_zero(ds[i], ds[i + 1], p_, j);

        // rank bookkeeping; d_1 is onto (A is generated in degree one, so
        // A_j = A_{j-1} A_1) and d_j is injective (dually B_j = B_1 B_{j-1}),
        // so their ranks are known; interior ranks are computed.
        std::vector<std::size_t> rk(j + 2, 0);
        for (std::size_t i = 1; i <= j; ++i) {
            if (dimK[i] == 0 || dimK[i - 1] == 0) {
                rk[i] = 0;
                continue;
            }
            if (i == 1)
                rk[i] = dimK[0];
            else if (i == j && dimK[j] > 4096)
                rk[i] = dimK[j];
            else
                rk[i] = detail::sparse_rank(ds[i], dimK[i - 1], p_);
        }

        for (std::size_t i = 0; i <= j; ++i)
            if (rk[i] + rk[i + 1] != dimK[i])
                return i;
        return std::nullopt;
    }

    unsigned p_;
    std::size_t d_;
    std::size_t degree_;
    RewritingSystem rsA_, rsB_;
    std::vector<std::optional<std::vector<Monomial>>> basisA_, basisB_;
    std::vector<std::optional<MulTable>> rightA_, leftB_;
};

inline std::optional<std::pair<std::size_t, std::size_t>>
koszul_complex_exactness(const QuadraticPresentation& a, std::size_t N)
{
    KoszulComplex complex(a, N);
    return complex.first_failure();
}

// --- verdicts ---

enum class KoszulStatus { certified_koszul, consistent_to_degree, inconsistent, inconclusive };

inline std::string to_string(KoszulStatus s)
{
    switch (s) {
    case KoszulStatus::certified_koszul: return "certified-koszul";
    case KoszulStatus::consistent_to_degree: return "consistent-to-degree";
    case KoszulStatus::inconsistent: return "inconsistent (NOT Koszul)";
    case KoszulStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

struct KoszulConfig {
    std::size_t random_orders = 10;
    std::size_t hilbert_degree = 8;
    std::size_t exactness_degree = 6;
    std::uint64_t order_seed = 0x6b6f737a756cULL;
};

struct KoszulVerdict {
    KoszulStatus status = KoszulStatus::inconclusive;
    std::optional<PbwCertificate> certificate;
    std::size_t orders_tried = 0;
    std::size_t hilbert_degree = 0;
    std::size_t exactness_degree = 0;
    bool hilbert_ran = false;
    bool exactness_ran = false;
    std::optional<std::size_t> hilbert_witness;
    std::optional<std::pair<std::size_t, std::size_t>> exactness_witness;
    std::string note;
};

inline KoszulVerdict koszul_verdict(const QuadraticPresentation& a, const KoszulConfig& cfg = {})
{
    KoszulVerdict v;
    auto pool = default_order_pool(a.generator_count(), cfg.random_orders, cfg.order_seed);
    v.orders_tried = pool.size();
    if (auto cert = pbw_certificate(a, pool)) {
        v.status = KoszulStatus::certified_koszul;
        v.certificate = std::move(cert);
        v.note = "confluent quadratic rewriting system (all degree-3 overlaps resolve); "
                 "normal words form a basis in every degree";
        return v;
    }
    try {
        v.hilbert_degree = cfg.hilbert_degree;
        v.hilbert_witness = hilbert_duality_test(a, cfg.hilbert_degree);
        v.hilbert_ran = true;
        v.exactness_degree = cfg.exactness_degree;
        v.exactness_witness = koszul_complex_exactness(a, cfg.exactness_degree);
        v.exactness_ran = true;
    } catch (const std::exception& e) {
        v.status = KoszulStatus::inconclusive;
        v.note = std::string("bounded tests incomplete: ") + e.what();
        return v;
    }
    if (v.hilbert_witness) {
        v.status = KoszulStatus::inconsistent;
        v.note = "Hilbert series duality fails in degree " + std::to_string(*v.hilbert_witness);
    } else if (v.exactness_witness) {
        v.status = KoszulStatus::inconsistent;
        v.note = "complex has homology at position " + std::to_string(v.exactness_witness->first) +
                 ", internal degree " + std::to_string(v.exactness_witness->second);
    } else {
        v.status = KoszulStatus::consistent_to_degree;
        v.note = "no PBW order found; series duality holds to degree " +
                 std::to_string(cfg.hilbert_degree) + " and the complex is exact to degree " +
                 std::to_string(cfg.exactness_degree);
    }
    return v;
}

} // namespace qkoszul

#endif
