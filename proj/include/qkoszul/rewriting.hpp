#ifndef QKOSZUL_REWRITING_HPP
#define QKOSZUL_REWRITING_HPP

#include "qkoszul/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace qkoszul {

// One rewrite rule of a homogeneous two-sided rewriting system: the monic
// leading monomial rewrites to a strictly deglex-smaller tail of the same
// degree (lead - tail lies in the ideal).
struct RewriteRule {
    Monomial lead;
    HomogeneousPoly tail;
    bool active = true;
};

// Degree-truncated two-sided rewriting system for a homogeneous ideal of
// the free algebra on d generators.  Construction runs overlap (critical
// pair) completion for all ambiguities of combined degree <= max_degree,
// smallest overlap monomial first, keeping rules inter-reduced: no lead
// divides another, and no tail contains a lead as a factor.
//
// When every rule is quadratic and degree-3 overlaps all resolve, the
// system is confluent in every degree (two quadratic leads can only
// overlap in a length-3 word), so queries above the nominal closure
// degree are still exact in that case.
class RewritingSystem {
public:
    static RewritingSystem complete(unsigned p, std::size_t d,
                                    std::vector<HomogeneousPoly> gens,
                                    std::size_t max_degree)
    {
        require_prime(p);
        RewritingSystem rs(p, d, max_degree);
        std::stable_sort(gens.begin(), gens.end(),
                         [](const HomogeneousPoly& a, const HomogeneousPoly& b) {
                             return a.degree() < b.degree();
                         });
        for (const auto& g : gens) {
            if (g.p() != p)
                throw std::invalid_argument("generator over wrong prime");
            if (!g.is_zero() && g.degree() < 2)
                throw std::invalid_argument("rewriting generators must have degree >= 2");
            if (g.degree() > max_degree)
                throw std::invalid_argument("closure degree below generator degree");
            rs.absorb(g);
        }
        rs.run_completion();
        return rs;
    }

    unsigned p() const { return p_; }
    std::size_t generator_count() const { return d_; }
    std::size_t closure_degree() const { return closure_; }

    std::vector<RewriteRule> rules() const
    {
        std::vector<RewriteRule> out;
        for (const auto& r : rules_)
            if (r.active)
                out.push_back(r);
        return out;
    }

    bool quadratic_only() const
    {
        for (const auto& r : rules_)
            if (r.active && r.lead.degree() > 2)
                return false;
        return true;
    }

    // Completion added a rule beyond degree 2 (failure of the quadratic
    // Groebner-basis property).
    bool has_rule_above_degree2() const { return !quadratic_only(); }

    bool confluent_at_all_degrees() const { return quadratic_only() && closure_ >= 3; }

    std::size_t effective_closure() const
    {
        return confluent_at_all_degrees() ? static_cast<std::size_t>(-1) : closure_;
    }

    HomogeneousPoly reduce(const HomogeneousPoly& poly) const
    {
        if (poly.degree() > effective_closure())
            throw std::invalid_argument("reduction beyond closure degree");
        return raw_reduce(poly);
    }

    // All degree-n monomials containing no lead as a factor, in deglex order.
    std::vector<Monomial> normal_monomials(std::size_t n) const
    {
        if (n > effective_closure())
            throw std::invalid_argument("normal monomials beyond closure degree");
        std::vector<Monomial> out;
        Monomial w;
        enumerate(w, n, out);
        return out;
    }

    unsigned long long normal_monomial_count(std::size_t n) const
    {
        if (n > effective_closure())
            throw std::invalid_argument("normal monomial count beyond closure degree");
        if (n == 0)
            return 1;
        if (quadratic_only()) {
            // transfer-matrix walk over allowed adjacent pairs
            std::vector<unsigned long long> cnt(d_, 1);
            for (std::size_t step = 1; step < n; ++step) {
                std::vector<unsigned long long> nxt(d_, 0);
                for (std::size_t i = 0; i < d_; ++i) {
                    if (cnt[i] == 0)
                        continue;
                    for (std::size_t j = 0; j < d_; ++j)
                        if (quad_rule_at(i, j) < 0)
                            nxt[j] += cnt[i];
                }
                cnt.swap(nxt);
            }
            unsigned long long total = 0;
            for (unsigned long long c : cnt)
                total += c;
            return total;
        }
        unsigned long long total = 0;
        Monomial w;
        count_rec(w, n, total);
        return total;
    }

    bool is_normal(const Monomial& m) const
    {
        return !find_reduction(m).has_value();
    }

private:
    RewritingSystem(unsigned p, std::size_t d, std::size_t closure)
        : p_(p), d_(d), closure_(closure), quad_table_(d * d, -1)
    {
    }

    struct Ambiguity {
        Monomial overlap;
        std::size_t left, right; // rule indices
        std::size_t width;       // overlap width (suffix of left = prefix of right)

        friend bool operator<(const Ambiguity& a, const Ambiguity& b)
        {
            return std::tie(a.overlap, a.left, a.right, a.width) <
                   std::tie(b.overlap, b.left, b.right, b.width);
        }
    };

    int quad_rule_at(std::size_t i, std::size_t j) const
    {
        return quad_table_[i * d_ + j];
    }

    // Leftmost reducible position in m, with the unique matching rule.
    // Uniqueness per position holds because leads form an antichain under
    // the factor relation.
    std::optional<std::pair<std::size_t, std::size_t>> find_reduction(const Monomial& m) const
    {
        const std::size_t n = m.degree();
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (pos + 2 <= n) {
                int q = quad_rule_at(m.word[pos], m.word[pos + 1]);
                if (q >= 0)
                    return std::make_pair(pos, static_cast<std::size_t>(q));
            }
            for (std::size_t idx : long_rules_) {
                const Monomial& l = rules_[idx].lead;
                const std::size_t L = l.degree();
                if (pos + L > n)
                    continue;
                bool hit = true;
                for (std::size_t k = 0; k < L; ++k)
                    if (m.word[pos + k] != l.word[k]) {
                        hit = false;
                        break;
                    }
                if (hit)
                    return std::make_pair(pos, idx);
            }
        }
        return std::nullopt;
    }

    HomogeneousPoly raw_reduce(HomogeneousPoly poly) const
    {
        for (;;) {
            // greatest reducible monomial first; each rewrite only creates
            // strictly smaller monomials, so this terminates
            const Monomial* target = nullptr;
            std::pair<std::size_t, std::size_t> hit{0, 0};
            for (auto it = poly.terms().rbegin(); it != poly.terms().rend(); ++it) {
                auto h = find_reduction(it->first);
                if (h) {
                    target = &it->first;
                    hit = *h;
                    break;
                }
            }
            if (!target)
                return poly;
            const Monomial m = *target;
            const unsigned c = poly.coeff(m);
            const auto& rule = rules_[hit.second];
            Monomial prefix = subword(m, 0, hit.first);
            Monomial suffix = subword(m, hit.first + rule.lead.degree(),
                                      m.degree() - hit.first - rule.lead.degree());
            poly.add_term(m, -static_cast<long long>(c));
            HomogeneousPoly replaced = hp_sandwich(prefix, rule.tail, suffix);
            poly = hp_add(poly, hp_scale(replaced, c));
        }
    }

    void absorb(const HomogeneousPoly& g)
    {
        HomogeneousPoly nf = raw_reduce(g);
        if (nf.is_zero())
            return;
        add_rule(nf);
    }

    void add_rule(const HomogeneousPoly& nf)
    {
        const unsigned lcinv = fp_inv(nf.leading_coeff(), p_);
        HomogeneousPoly monic = hp_scale(nf, lcinv);
        const Monomial lead = monic.leading_monomial();
        HomogeneousPoly tail = hp_sub(hp_monomial(p_, lead), monic);

        // Retire rules whose lead contains the new lead (possible only when
        // generator degrees are mixed); their content is re-absorbed.
        std::vector<HomogeneousPoly> reabsorb;
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            if (!rules_[i].active)
                continue;
            if (rules_[i].lead.degree() > lead.degree() && find_factor(rules_[i].lead, lead)) {
                rules_[i].active = false;
                reabsorb.push_back(hp_sub(hp_monomial(p_, rules_[i].lead), rules_[i].tail));
            }
        }
        rebuild_lookup();

        const std::size_t idx = rules_.size();
        rules_.push_back(RewriteRule{lead, tail, true});
        if (lead.degree() == 2)
            quad_table_[lead.word[0] * d_ + lead.word[1]] = static_cast<int>(idx);
        else
            long_rules_.push_back(idx);

        // Keep tails fully reduced against the enlarged system.
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            if (!rules_[i].active || rules_[i].lead.degree() < lead.degree() || i == idx)
                continue;
            bool stale = false;
            for (const auto& [m, c] : rules_[i].tail.terms())
                if (find_factor(m, lead)) {
                    stale = true;
                    break;
                }
            if (stale)
                rules_[i].tail = raw_reduce(rules_[i].tail);
        }

        enqueue_overlaps(idx);
        for (const auto& g : reabsorb)
            absorb(g);
    }

    void rebuild_lookup()
    {
        std::fill(quad_table_.begin(), quad_table_.end(), -1);
        long_rules_.clear();
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            if (!rules_[i].active)
                continue;
            if (rules_[i].lead.degree() == 2)
                quad_table_[rules_[i].lead.word[0] * d_ + rules_[i].lead.word[1]] =
                    static_cast<int>(i);
            else
                long_rules_.push_back(i);
        }
    }

    void enqueue_overlaps(std::size_t idx)
    {
        for (std::size_t j = 0; j < rules_.size(); ++j) {
            if (!rules_[j].active)
                continue;
            enqueue_pair(idx, j);
            if (j != idx)
                enqueue_pair(j, idx);
        }
    }

    // Overlaps where a proper suffix of lead(left) equals a proper prefix
    // of lead(right).
    void enqueue_pair(std::size_t left, std::size_t right)
    {
        const Monomial& a = rules_[left].lead;
        const Monomial& b = rules_[right].lead;
        const std::size_t wmax = std::min(a.degree(), b.degree()) - 1;
        for (std::size_t w = 1; w <= wmax; ++w) {
            bool match = true;
            for (std::size_t k = 0; k < w; ++k)
                if (a.word[a.degree() - w + k] != b.word[k]) {
                    match = false;
                    break;
                }
            if (!match)
                continue;
            if (a.degree() + b.degree() - w > closure_)
                continue;
            Monomial overlap = a;
            overlap.word.insert(overlap.word.end(), b.word.begin() + w, b.word.end());
            pending_.insert(Ambiguity{std::move(overlap), left, right, w});
        }
    }

    void run_completion()
    {
        while (!pending_.empty()) {
            Ambiguity amb = *pending_.begin();
            pending_.erase(pending_.begin());
            if (!rules_[amb.left].active || !rules_[amb.right].active)
                continue;
            const RewriteRule& rl = rules_[amb.left];
            const RewriteRule& rr = rules_[amb.right];
            Monomial suffix = subword(amb.overlap, rl.lead.degree(),
                                      amb.overlap.degree() - rl.lead.degree());
            Monomial prefix = subword(amb.overlap, 0, amb.overlap.degree() - rr.lead.degree());
            HomogeneousPoly route1 = hp_sandwich(Monomial{}, rl.tail, suffix);
            HomogeneousPoly route2 = hp_sandwich(prefix, rr.tail, Monomial{});
            HomogeneousPoly s = raw_reduce(hp_sub(route1, route2));
            if (!s.is_zero())
                add_rule(s);
        }
    }

    void enumerate(Monomial& w, std::size_t n, std::vector<Monomial>& out) const
    {
        if (w.degree() == n) {
            out.push_back(w);
            return;
        }
        for (unsigned g = 0; g < d_; ++g) {
            w.word.push_back(g);
            if (extension_normal(w))
                enumerate(w, n, out);
            w.word.pop_back();
        }
    }

    void count_rec(Monomial& w, std::size_t n, unsigned long long& total) const
    {
        if (w.degree() == n) {
            ++total;
            return;
        }
        for (unsigned g = 0; g < d_; ++g) {
            w.word.push_back(g);
            if (extension_normal(w))
                count_rec(w, n, total);
            w.word.pop_back();
        }
    }

    // The word was normal before its last letter was appended; only
    // factors ending at the last position need checking.
    bool extension_normal(const Monomial& w) const
    {
        const std::size_t n = w.degree();
        if (n >= 2 && quad_rule_at(w.word[n - 2], w.word[n - 1]) >= 0)
            return false;
        for (std::size_t idx : long_rules_) {
            const Monomial& l = rules_[idx].lead;
            const std::size_t L = l.degree();
            if (L > n)
                continue;
            bool hit = true;
            for (std::size_t k = 0; k < L; ++k)
                if (w.word[n - L + k] != l.word[k]) {
                    hit = false;
                    break;
                }
            if (hit)
                return false;
        }
        return true;
    }

    unsigned p_;
    std::size_t d_;
    std::size_t closure_;
    std::vector<RewriteRule> rules_;
    std::vector<int> quad_table_;
    std::vector<std::size_t> long_rules_;
    std::set<Ambiguity> pending_;
};

inline RewritingSystem buchberger_to_degree(unsigned p, std::size_t d,
                                            std::vector<HomogeneousPoly> gens,
                                            std::size_t max_degree)
{
    return RewritingSystem::complete(p, d, std::move(gens), max_degree);
}

} // namespace qkoszul

#endif
