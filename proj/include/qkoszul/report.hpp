#ifndef QKOSZUL_REPORT_HPP
#define QKOSZUL_REPORT_HPP

#include "qkoszul/parse.hpp"
#include "qkoszul/progroup.hpp"

#include <string>

namespace qkoszul {

inline std::string matrix_to_string(const FpMatrix& m)
{
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i)
            out += ",";
        out += "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                out += ",";
            out += std::to_string(m.at(i, j));
        }
        out += "]";
    }
    return out + "]";
}

inline std::string dims_to_string(const GradedDims& dims)
{
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i)
            out += " ";
        out += std::to_string(dims[i]);
    }
    return out;
}

inline std::string verdict_to_string(const KoszulVerdict& v)
{
    std::string s = to_string(v.status);
    if (v.status == KoszulStatus::consistent_to_degree)
        s += " (series to " + std::to_string(v.hilbert_degree) + ", complex to " +
             std::to_string(v.exactness_degree) + ")";
    return s;
}

inline std::string verdict_details(const KoszulVerdict& v, const std::string& indent)
{
    std::string out;
    out += indent + "orders-tried = " + std::to_string(v.orders_tried) + "\n";
    if (v.certificate) {
        std::string order;
        for (std::size_t i = 0; i < v.certificate->order.size(); ++i) {
            if (i)
                order += " ";
            order += std::to_string(v.certificate->order[i] + 1);
        }
        out += indent + "pbw-order = " + order + "\n";
        out += indent + "pbw-rules = " + std::to_string(v.certificate->rule_count) + "\n";
        out += indent + "critical-words = " + std::to_string(v.certificate->critical.size()) + "\n";
    }
    if (v.hilbert_ran)
        out += indent + "series-duality = " +
               (v.hilbert_witness ? "fail at degree " + std::to_string(*v.hilbert_witness)
                                  : "pass to degree " + std::to_string(v.hilbert_degree)) +
               "\n";
    if (v.exactness_ran)
        out += indent + "complex-exactness = " +
               (v.exactness_witness
                    ? "fail at position " + std::to_string(v.exactness_witness->first) +
                          ", internal degree " + std::to_string(v.exactness_witness->second)
                    : "pass to degree " + std::to_string(v.exactness_degree)) +
               "\n";
    out += indent + "note = " + v.note + "\n";
    return out;
}

// Stable plain-text rendering of a full analysis.  The trailing key=value
// block is the machine-readable section the tests grep.
inline std::string report_to_string(const CaseReport& r)
{
    const auto& g = r.input;
    std::string out;
    out += "one-relator analysis\n";
    out += "defaults: depth=" + std::to_string(r.config.depth) +
           " dims-degree=" + std::to_string(r.config.dims_degree) +
           " orders=" + std::to_string(r.config.koszul.random_orders) +
           " hilbert-degree=" + std::to_string(r.config.koszul.hilbert_degree) +
           " exactness-degree=" + std::to_string(r.config.koszul.exactness_degree) + "\n";
    out += "\n== GENERAL ==\n";
    out += "p = " + std::to_string(g.p) + "\n";
    out += "d = " + std::to_string(g.d) + "\n";
    std::string gens;
    for (std::size_t i = 0; i < g.names.size(); ++i)
        gens += (i ? " " : "") + g.names[i];
    out += "generators = " + gens + "\n";
    out += "relator = " + word_to_string(g.relator, g.names) + "\n";
    out += "q = " + std::to_string(r.q) + "\n";

    const auto xnames = default_names(g.d, "X");
    out += "\n== INITIAL-FORM ==\n";
    out += "depth = " + std::to_string(r.depth) + "\n";
    out += "rho = " + to_string(r.rho, xnames) + "\n";
    out += "mild = " + std::string(r.mild ? "true" : "false") + "\n";
    out += "p2-hypothesis-ambiguous = " + std::string(r.p2_hypothesis_ambiguous ? "true" : "false") +
           "\n";

    out += "\n== NORMALIZATION ==\n";
    out += "case = " + to_string(r.norm.tag) + "\n";
    out += "n = " + std::to_string(r.norm.n) + "\n";
    out += "m = " + std::to_string(r.norm.m) + "\n";
    out += "P = " + matrix_to_string(r.norm.P) + "\n";

    out += "\n== GR ==\n";
    for (const auto& rel : r.gr.raw.relations())
        out += "relation = " + to_string(rel, xnames) + "\n";
    for (const auto& rel : r.gr.normalized.relations())
        out += "normalized-relation = " + to_string(rel, xnames) + "\n";
    out += "decomposition = " + r.demushkin_label + " ⊔ " + r.free_label + "\n";
    out += "dims = " + dims_to_string(r.gr_dims) + "\n";
    out += "series-prediction = " + std::string(r.dims_match ? "match" : "MISMATCH") + "\n";

    out += "\n== COHOMOLOGY ==\n";
    std::string hgens;
    for (std::size_t i = 0; i < r.h_model.labels().size(); ++i)
        hgens += (i ? " " : "") + r.h_model.labels()[i];
    out += "generators = " + hgens + "\n";
    out += "relation-count = " + std::to_string(r.h_model.relation_count()) + "\n";
    out += "dims = " + dims_to_string(r.h_dims) + "\n";
    out += "vanishing = " + std::string(r.h_dims_shape_ok ? "ok" : "UNEXPECTED") + "\n";

    out += "\n== VERDICTS ==\n";
    out += "mild = " + std::string(r.mild ? "true" : "false") + "\n";
    out += "theorem2-duality = " + std::string(r.duality_equal ? "true" : "false") + "\n";
    out += "gr-koszul = " + verdict_to_string(r.gr_verdict) + "\n";
    out += verdict_details(r.gr_verdict, "  gr.");
    out += "h-koszul = " + verdict_to_string(r.h_verdict) + "\n";
    out += verdict_details(r.h_verdict, "  h.");

    out += "\n-- machine-readable --\n";
    out += "p=" + std::to_string(g.p) + "\n";
    out += "d=" + std::to_string(g.d) + "\n";
    out += "q=" + std::to_string(r.q) + "\n";
    out += "depth=" + std::to_string(r.depth) + "\n";
    out += "case=" + to_string(r.norm.tag) + "\n";
    out += "n=" + std::to_string(r.norm.n) + "\n";
    out += "m=" + std::to_string(r.norm.m) + "\n";
    out += "mild=" + std::string(r.mild ? "true" : "false") + "\n";
    out += "ambiguous=" + std::string(r.p2_hypothesis_ambiguous ? "true" : "false") + "\n";
    out += "duality=" + std::string(r.duality_equal ? "true" : "false") + "\n";
    out += "dims-match=" + std::string(r.dims_match ? "true" : "false") + "\n";
    out += "h-vanishing=" + std::string(r.h_dims_shape_ok ? "true" : "false") + "\n";
    out += "theorem2=" + std::string(r.theorem2 ? "true" : "false") + "\n";
    out += "gr-koszul=" + to_string(r.gr_verdict.status) + "\n";
    out += "h-koszul=" + to_string(r.h_verdict.status) + "\n";
    return out;
}

} // namespace qkoszul

#endif
