#ifndef QKOSZUL_CLI_HPP
#define QKOSZUL_CLI_HPP

#include "qkoszul/fixtures.hpp"
#include "qkoszul/report.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qkoszul {

// Exit codes: 0 success, 1 hypothesis violation (the input is outside the
// analyzable shapes), 2 parse or usage error.
namespace cli {

constexpr int exit_ok = 0;
constexpr int exit_hypothesis = 1;
constexpr int exit_parse = 2;

inline const char* usage_text()
{
    return "usage: qkoszul <verb> [flags] [files]\n"
           "\n"
           "verbs:\n"
           "  dual <file.alg>                 quadratic dual of an algebra\n"
           "  product --free|--direct|--tensor1|--tensor-1 <a.alg> <b.alg>\n"
           "  dims --deg N <file.alg>         graded dimensions up to degree N\n"
           "  koszul [--deg N] [--orders k] <file.alg>\n"
           "  initial-form [--depth D] <file.pres>\n"
           "  normalize [--depth D] <file.pres>\n"
           "  analyze [--deg N] [--depth D] [--orders k] <file.pres>\n"
           "  catalog [--deg N]               run the built-in fixture suite\n"
           "\n"
           "flags: --deg <n>  --depth <D>  --orders <k>  --out <path>\n";
}

struct Options {
    std::string verb;
    std::vector<std::string> files;
    std::optional<std::size_t> deg;
    std::optional<std::size_t> depth;
    std::optional<std::size_t> orders;
    std::optional<std::string> out_path;
    bool product_free = false, product_direct = false, product_tensor1 = false,
         product_tensor_minus1 = false;
};

inline Options parse_args(const std::vector<std::string>& args)
{
    if (args.empty())
        throw ParseError("missing verb\n" + std::string(usage_text()));
    Options o;
    o.verb = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto need_value = [&](const char* flag) -> std::string {
            if (i + 1 >= args.size())
                throw ParseError(std::string(flag) + " needs a value");
            return args[++i];
        };
        auto as_count = [&](const std::string& v, const char* flag) -> std::size_t {
            try {
                long long n = std::stoll(v);
                if (n < 0)
                    throw std::invalid_argument("negative");
                return static_cast<std::size_t>(n);
            } catch (...) {
                throw ParseError(std::string(flag) + " needs a nonnegative integer, got '" + v + "'");
            }
        };
        if (a == "--deg")
            o.deg = as_count(need_value("--deg"), "--deg");
        else if (a == "--depth")
            o.depth = as_count(need_value("--depth"), "--depth");
        else if (a == "--orders")
            o.orders = as_count(need_value("--orders"), "--orders");
        else if (a == "--out")
            o.out_path = need_value("--out");
        else if (a == "--free")
            o.product_free = true;
        else if (a == "--direct")
            o.product_direct = true;
        else if (a == "--tensor1")
            o.product_tensor1 = true;
        else if (a == "--tensor-1")
            o.product_tensor_minus1 = true;
        else if (!a.empty() && a[0] == '-')
            throw ParseError("unknown flag '" + a + "'\n" + std::string(usage_text()));
        else
            o.files.push_back(a);
    }
    return o;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void emit(const Options& o, std::ostream& out, const std::string& text)
{
    if (o.out_path) {
        std::ofstream f(*o.out_path, std::ios::binary);
        if (!f)
            throw ParseError("cannot write file '" + *o.out_path + "'");
        f << text;
        out << "wrote " << *o.out_path << "\n";
    } else {
        out << text;
    }
}

inline const std::string& one_file(const Options& o)
{
    if (o.files.size() != 1)
        throw ParseError("verb '" + o.verb + "' needs exactly one input file");
    return o.files.front();
}

} // namespace cli

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    using namespace cli;
    try {
        Options o = parse_args(args);

        if (o.verb == "help" || o.verb == "--help" || o.verb == "-h") {
            out << usage_text();
            return exit_ok;
        }

        if (o.verb == "dual") {
            QuadraticPresentation a = parse_algebra(read_file(one_file(o)));
            emit(o, out, to_algebra_file(quadratic_dual(a)));
            return exit_ok;
        }

        if (o.verb == "product") {
            if (o.files.size() != 2)
                throw ParseError("product needs two algebra files");
            int picked = int(o.product_free) + int(o.product_direct) + int(o.product_tensor1) +
                         int(o.product_tensor_minus1);
            if (picked != 1)
                throw ParseError(
                    "product needs exactly one of --free --direct --tensor1 --tensor-1");
            QuadraticPresentation a = parse_algebra(read_file(o.files[0]));
            QuadraticPresentation b = parse_algebra(read_file(o.files[1]));
            QuadraticPresentation c = o.product_free      ? free_product(a, b)
                                      : o.product_direct  ? direct_product(a, b)
                                      : o.product_tensor1 ? tensor1(a, b)
                                                          : tensor_minus1(a, b);
            emit(o, out, to_algebra_file(c));
            return exit_ok;
        }

        if (o.verb == "dims") {
            if (!o.deg)
                throw ParseError("dims needs --deg <n>");
            QuadraticPresentation a = parse_algebra(read_file(one_file(o)));
            emit(o, out, dims_to_string(graded_dims(a, *o.deg)) + "\n");
            return exit_ok;
        }

        if (o.verb == "koszul") {
            QuadraticPresentation a = parse_algebra(read_file(one_file(o)));
            KoszulConfig cfg;
            if (o.deg) {
                cfg.hilbert_degree = *o.deg;
                cfg.exactness_degree = *o.deg;
            }
            if (o.orders)
                cfg.random_orders = *o.orders;
            KoszulVerdict v = koszul_verdict(a, cfg);
            std::string text = "koszul verdict\n";
            text += "defaults: orders=" + std::to_string(cfg.random_orders) +
                    " hilbert-degree=" + std::to_string(cfg.hilbert_degree) +
                    " exactness-degree=" + std::to_string(cfg.exactness_degree) + "\n";
            text += "status = " + verdict_to_string(v) + "\n";
            text += verdict_details(v, "  ");
            text += "\n-- machine-readable --\n";
            text += "status=" + to_string(v.status) + "\n";
            emit(o, out, text);
            return exit_ok;
        }

        if (o.verb == "initial-form") {
            GroupPresentation g = parse_presentation(read_file(one_file(o)));
            std::size_t depth = o.depth.value_or(3);
            long long q = abelianization_q(g);
            InitialForm init = initial_form(g, depth);
            const auto xnames = default_names(g.d, "X");
            std::string text = "initial form\n";
            text += "defaults: depth=" + std::to_string(depth) + "\n";
            text += "q = " + std::to_string(q) + "\n";
            text += "depth = " + std::to_string(init.degree) + "\n";
            text += "rho = " + to_string(init.form, xnames) + "\n";
            if (init.degree == 2)
                text += "mild = " + std::string(mildness_check(init.form) ? "true" : "false") + "\n";
            text += "\n-- machine-readable --\n";
            text += "q=" + std::to_string(q) + "\n";
            text += "depth=" + std::to_string(init.degree) + "\n";
            emit(o, out, text);
            return exit_ok;
        }

        if (o.verb == "normalize") {
            GroupPresentation g = parse_presentation(read_file(one_file(o)));
            std::size_t depth = o.depth.value_or(3);
            long long q = abelianization_q(g);
            InitialForm init = initial_form(g, depth);
            if (init.degree != 2)
                throw HypothesisError("the relator has depth " + std::to_string(init.degree) +
                                      "; normalization needs depth exactly 2");
            NormalizationResult norm = demushkin_normalize(init.form, g.d, q);
            std::string text = "normal form\n";
            text += "case = " + to_string(norm.tag) + "\n";
            text += "n = " + std::to_string(norm.n) + "\n";
            text += "m = " + std::to_string(norm.m) + "\n";
            text += "P = " + matrix_to_string(norm.P) + "\n";
            text += "\n-- machine-readable --\n";
            text += "case=" + to_string(norm.tag) + "\n";
            text += "n=" + std::to_string(norm.n) + "\n";
            text += "m=" + std::to_string(norm.m) + "\n";
            emit(o, out, text);
            return exit_ok;
        }

        if (o.verb == "analyze") {
            GroupPresentation g = parse_presentation(read_file(one_file(o)));
            AnalyzeConfig cfg;
            if (o.depth)
                cfg.depth = *o.depth;
            if (o.deg)
                cfg.dims_degree = *o.deg;
            if (o.orders)
                cfg.koszul.random_orders = *o.orders;
            CaseReport rep = verify_theorem2(g, cfg);
            emit(o, out, report_to_string(rep));
            return exit_ok;
        }

        if (o.verb == "catalog") {
            std::size_t deg = o.deg.value_or(8);
            std::size_t exact = std::min<std::size_t>(deg, 6);
            auto results = run_catalog(deg, exact, deg);
            std::string text;
            std::size_t failed = 0;
            for (const auto& r : results) {
                text += (r.pass ? "PASS " : "FAIL ") + r.name;
                if (!r.pass) {
                    text += "  [" + r.detail + "]";
                    ++failed;
                }
                text += "\n";
            }
            text += "\n" + std::to_string(results.size() - failed) + "/" +
                    std::to_string(results.size()) + " fixtures pass\n";
            emit(o, out, text);
            return failed == 0 ? exit_ok : exit_hypothesis;
        }

        throw ParseError("unknown verb '" + o.verb + "'\n" + std::string(usage_text()));
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_parse;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_hypothesis;
    }
}

} // namespace qkoszul

#endif
