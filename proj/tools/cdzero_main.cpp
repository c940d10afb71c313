#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "cdzero/json.hpp"

// Flags are GNU-ish but the parser is hand-rolled: element literals such as
// "-e4 + e15" arrive as positional arguments with a leading dash, which the
// usual option-parsing libraries refuse without a "--" separator. Unknown
// "--long" tokens are still rejected; single-dash tokens that are not known
// flags fall through to the positional list.

namespace {

using cdzero::Element;
using cdzero::ordered_json;
using cdzero::Rational;
using ER = Element<Rational>;

constexpr const char* kUsage = R"(cdzero - exact Cayley-Dickson algebra toolkit

usage: cdzero <command> [flags] [args]

commands:
  mul -n N LHS RHS                     exact product of two elements
  conj -n N X                          conjugate
  tilde -n N X                         right multiplication by the symplectic unit
  hat -n N X                           swap of the two doubling halves
  spectrum -n N X [--tol T]            spectrum of a doubly pure element
  annihilator -n N X                   exact kernel of L_X with basis
  construct orthogonal -n N A B        zero-divisor pair from b in H_a-perp, |a| = |b|
  construct tilde-partner -n N A X [--sign=+1|-1]
  construct spectral -n N A MU X [--sign=+1|-1]
  construct promote -n N ALPHA         pure-element promotion one level up
  classify -n N A B                    Stiefel classification of the pair (A, B)
  verify-paper [--only P] [--count D] [--seed S] [--json FILE]
  sweep -n N [--kind stiefel|identities] [--count C] [--seed S]

flags:
  -n, --level N   algebra level, capped at 10 unless --allow-large is given
  --tol T         clustering tolerance for spectrum (default 1e-8)
  --seed S        RNG seed (default 2026)
  --count C       draw count (sweep: 25; verify-paper: draws per level, 10)
  --json          emit the payload as JSON (verify-paper: --json FILE writes a file)
  --only PREFIX   verify-paper case-id prefix filter
  --sign +1|-1    sign choice in the tilde-partner and spectral constructors
  --allow-large   lift the level cap (exact arithmetic gets expensive fast)
  -h, --help      this message

Exit codes: 0 ok, 1 failure, 2 parse error, 3 level mismatch, 4 spectrum input
not doubly pure. Diagnostics go to stderr, payload to stdout.
)";

struct Args {
    int level = -1;
    double tol = 1e-8;
    std::uint64_t seed = 2026;
    int count = -1;
    int sign = 1;
    bool json = false;
    bool allow_large = false;
    std::string json_path;
    std::string only;
    std::string kind = "stiefel";
    std::vector<std::string> positional;
};

[[noreturn]] void usage_error(const std::string& message) {
    throw cdzero::ParseError(message + " (see 'cdzero --help')");
}

long long parse_integer(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        usage_error(std::string("expected an integer for ") + what + ", got '" + text + "'");
    }
}

/// `json_takes_value` switches --json between a flag (payload to stdout) and
/// an option holding an output path (verify-paper).
Args parse_flags(const std::vector<std::string>& tokens, bool json_takes_value) {
    Args args;
    bool positional_only = false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& tok = tokens[i];
        std::string name = tok, inline_value;
        bool has_inline = false;
        const auto eq = tok.find('=');
        if (tok.size() > 2 && tok[0] == '-' && eq != std::string::npos) {
            name = tok.substr(0, eq);
            inline_value = tok.substr(eq + 1);
            has_inline = true;
        }
        auto value = [&](const char* what) -> std::string {
            if (has_inline) return inline_value;
            if (i + 1 >= tokens.size())
                usage_error(std::string(what) + " requires a value");
            return tokens[++i];
        };
        if (positional_only || tok.empty() || tok[0] != '-') {
            args.positional.push_back(tok);
        } else if (tok == "--") {
            positional_only = true;
        } else if (name == "-n" || name == "--level") {
            args.level = int(parse_integer(value("--level"), "--level"));
        } else if (name == "--tol") {
            try {
                args.tol = std::stod(value("--tol"));
            } catch (const std::exception&) {
                usage_error("expected a number for --tol");
            }
        } else if (name == "--seed") {
            args.seed = std::uint64_t(parse_integer(value("--seed"), "--seed"));
        } else if (name == "--count") {
            args.count = int(parse_integer(value("--count"), "--count"));
        } else if (name == "--sign") {
            const std::string v = value("--sign");
            if (v == "1" || v == "+1")
                args.sign = 1;
            else if (v == "-1")
                args.sign = -1;
            else
                usage_error("--sign must be +1 or -1");
        } else if (name == "--only") {
            args.only = value("--only");
        } else if (name == "--kind") {
            args.kind = value("--kind");
        } else if (name == "--json") {
            if (json_takes_value)
                args.json_path = value("--json");
            else
                args.json = true;
        } else if (name == "--allow-large") {
            args.allow_large = true;
        } else if (tok.rfind("--", 0) == 0) {
            usage_error("unknown option '" + tok + "'");
        } else {
            // single-dash leftovers are element literals like "-e4 + e15"
            args.positional.push_back(tok);
        }
    }
    return args;
}

int require_level(const Args& args) {
    if (args.level < 0) usage_error("this command needs -n/--level");
    cdzero::check_level_cap(args.level, args.allow_large);
    if (args.level > cdzero::kDefaultMaxLevel)
        std::cerr << "warning: level " << args.level << " works on 2^" << args.level
                  << "-coordinate elements; expect long runtimes\n";
    return args.level;
}

const std::string& positional(const Args& args, std::size_t index, const char* what) {
    if (index >= args.positional.size())
        usage_error(std::string("missing ") + what + " argument");
    return args.positional[index];
}

void require_positional_count(const Args& args, std::size_t count) {
    if (args.positional.size() > count)
        usage_error("unexpected argument '" + args.positional[count] + "'");
}

void emit_json(const ordered_json& payload) { std::cout << payload.dump() << "\n"; }

std::string lambda_text(double lambda) {
    const long long snap = std::llround(lambda);
    if (std::abs(lambda - double(snap)) <= 1e-9) return std::to_string(snap);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", lambda);
    return buf;
}

// ------------------------------------------------------------------ commands

int run_binary_op(const char* op, const Args& args) {
    const int level = require_level(args);
    const ER lhs = cdzero::parse_element(positional(args, 0, "left element"), level,
                                         args.allow_large);
    const ER rhs = cdzero::parse_element(positional(args, 1, "right element"), level,
                                         args.allow_large);
    require_positional_count(args, 2);
    const ER result = lhs * rhs;
    if (args.json)
        emit_json(ordered_json{{"schema_version", cdzero::kSchemaVersion},
                               {"op", op},
                               {"level", level},
                               {"lhs", cdzero::format_element(lhs)},
                               {"rhs", cdzero::format_element(rhs)},
                               {"result", cdzero::format_element(result)}});
    else
        std::cout << cdzero::format_element(result) << "\n";
    return 0;
}

int run_unary_op(const char* op, const Args& args) {
    const int level = require_level(args);
    const ER input =
        cdzero::parse_element(positional(args, 0, "element"), level, args.allow_large);
    require_positional_count(args, 1);
    ER result;
    if (std::string(op) == "conj")
        result = cdzero::conjugate(input);
    else if (std::string(op) == "tilde")
        result = cdzero::tilde(input);
    else
        result = cdzero::hat(input);
    if (args.json)
        emit_json(ordered_json{{"schema_version", cdzero::kSchemaVersion},
                               {"op", op},
                               {"level", level},
                               {"input", cdzero::format_element(input)},
                               {"result", cdzero::format_element(result)}});
    else
        std::cout << cdzero::format_element(result) << "\n";
    return 0;
}

int run_spectrum(const Args& args) {
    const int level = require_level(args);
    const ER a = cdzero::parse_element(positional(args, 0, "element"), level, args.allow_large);
    require_positional_count(args, 1);
    const auto report = cdzero::spectrum(a, args.tol);
    if (args.json) {
        emit_json(cdzero::json_of(report));
        return 0;
    }
    std::string out = "{";
    for (std::size_t i = 0; i < report.clusters.size(); ++i)
        out += (i ? ", " : "") + lambda_text(report.clusters[i].lambda);
    std::cout << out << "}\n";
    return 0;
}

int run_annihilator(const Args& args) {
    const int level = require_level(args);
    const ER a = cdzero::parse_element(positional(args, 0, "element"), level, args.allow_large);
    require_positional_count(args, 1);
    const auto ann = cdzero::annihilator(a);
    if (args.json) {
        emit_json(cdzero::json_of(ann));
        return 0;
    }
    std::cout << "dim " << ann.dim << "\n";
    for (const auto& v : ann.basis) std::cout << cdzero::format_element(v) << "\n";
    return 0;
}

void print_pair(const cdzero::ZeroDivisorPair<Rational>& pair, const char* beta_line,
                bool as_json) {
    if (as_json) {
        ordered_json payload = cdzero::json_of(pair);
        if (beta_line) payload["beta"] = beta_line;
        emit_json(payload);
        return;
    }
    if (beta_line) std::cout << "beta = " << beta_line << "\n";
    std::cout << "alpha = " << cdzero::format_element(pair.alpha) << "\n"
              << "chi = " << cdzero::format_element(pair.chi) << "\n"
              << "level = " << pair.level << "\n"
              << "construction = " << cdzero::to_string(pair.construction) << "\n"
              << "residual = " << pair.residual << "\n"
              << "annihilator_dim = " << pair.annihilator_dim << "\n";
}

int run_construct(const std::string& kind, const Args& args) {
    const int level = require_level(args);
    const auto element = [&](std::size_t index, const char* what) {
        return cdzero::parse_element(positional(args, index, what), level, args.allow_large);
    };
    cdzero::ZeroDivisorPair<Rational> pair;
    std::string beta_line;
    if (kind == "orthogonal") {
        pair = cdzero::construct_orthogonal(element(0, "a"), element(1, "b"));
        require_positional_count(args, 2);
    } else if (kind == "tilde-partner") {
        pair = cdzero::construct_tilde_partner(element(0, "a"), args.sign, element(1, "x"));
        require_positional_count(args, 2);
    } else if (kind == "spectral") {
        const Rational mu = cdzero::parse_rational(positional(args, 1, "lambda"));
        pair = cdzero::construct_spectral(element(0, "a"), mu, element(2, "x"), args.sign);
        require_positional_count(args, 3);
    } else if (kind == "promote") {
        const auto res = cdzero::construct_promote_pure(element(0, "alpha"));
        require_positional_count(args, 1);
        pair = res.pair;
        beta_line = cdzero::format_element(res.beta);
    } else {
        usage_error("unknown constructor '" + kind +
                    "' (expected orthogonal, tilde-partner, spectral or promote)");
    }
    pair.annihilator_dim = cdzero::annihilator(pair.alpha).dim;
    print_pair(pair, beta_line.empty() ? nullptr : beta_line.c_str(), args.json);
    return 0;
}

int run_classify(const Args& args) {
    const int level = require_level(args);
    const ER a = cdzero::parse_element(positional(args, 0, "a"), level, args.allow_large);
    const ER b = cdzero::parse_element(positional(args, 1, "b"), level, args.allow_large);
    require_positional_count(args, 2);
    const auto cls = cdzero::classify(a, b);
    if (args.json) {
        emit_json(cdzero::json_of(cls));
        return 0;
    }
    const auto yn = [](bool v) { return v ? "true" : "false"; };
    std::cout << "case = " << cdzero::to_string(cls.case_tag) << "\n"
              << "is_stiefel = " << yn(cls.is_stiefel) << "\n"
              << "is_nontrivial = " << yn(cls.is_nontrivial) << "\n"
              << "inner_ab = " << cdzero::format_scalar(cls.inner_ab) << "\n"
              << "inner_tilde_ab = " << cdzero::format_scalar(cls.inner_tilde_ab) << "\n"
              << "norm_gap = " << cdzero::format_scalar(cls.norm_gap) << "\n";
    return 0;
}

int run_verify(const Args& args) {
    const int draws = args.count < 0 ? 10 : args.count;
    if (draws <= 0) usage_error("verify-paper needs a positive --count");
    const auto suite = cdzero::verify_replay(args.only, draws, args.seed);
    if (suite.cases.empty()) {
        std::cerr << "error: no cases match --only '" << args.only << "'\n";
        return 1;
    }
    for (const auto& c : suite.cases) {
        std::string id = c.case_id;
        if (id.size() < 30) id.resize(30, ' ');
        std::string prov = c.provenance;
        if (prov.size() < 16) prov.resize(16, ' ');
        std::cout << id << "  " << (c.passed ? "pass" : "FAIL") << "  " << prov << "  "
                  << c.actual << "\n";
    }
    std::cout << suite.passed << "/" << suite.cases.size() << " cases passed\n";
    if (!args.json_path.empty()) {
        std::ofstream out(args.json_path);
        out << cdzero::json_of(suite).dump() << "\n";
        if (!out) {
            std::cerr << "error: cannot write '" << args.json_path << "'\n";
            return 1;
        }
    }
    if (!suite.all_passed()) {
        std::cerr << "failing cases:";
        for (const auto& c : suite.cases)
            if (!c.passed) std::cerr << " " << c.case_id;
        std::cerr << "\n";
        return 1;
    }
    return 0;
}

ordered_json identity_sweep(int level, int count, std::uint64_t seed) {
    if (level < 3) throw cdzero::PreconditionError("sweep --kind identities needs level >= 3");
    if (count < 0) throw cdzero::PreconditionError("sweep needs count >= 0");
    int holds = 0;
    ordered_json failures = ordered_json::array();
    const ER st = cdzero::symplectic_unit<Rational>(level);
    for (int i = 0; i < count; ++i) {
        cdzero::Rng rng(seed ^ (0x9e3779b97f4a7c15ull * std::uint64_t(i + 1)));
        const ER a = cdzero::random_doubly_pure(level, rng);
        const ER b = cdzero::random_doubly_pure(level, rng);
        const ER p = cdzero::random_pure(level, rng);
        bool ok = a * st == tilde(a) && st * a == -tilde(a);
        ok = ok && a * tilde(a) == -norm_sq(a) * st && inner(a, tilde(a)) == Rational(0);
        ok = ok && tilde(p) * b == -tilde(p * b);
        ok = ok && (inner(a, b) == Rational(0)) == (tilde(a) * b + tilde(b) * a).is_zero();
        ok = ok && cdzero::anticommutation_check(a);
        ok = ok && cdzero::l_squared_equals_r_squared_check(p);
        if (ok)
            ++holds;
        else
            failures.push_back(i);
    }
    return ordered_json{{"schema_version", cdzero::kSchemaVersion},
                        {"kind", "identities"},
                        {"level", level},
                        {"count", count},
                        {"seed", seed},
                        {"holds", holds},
                        {"failures", failures}};
}

int run_sweep(const Args& args) {
    const int level = require_level(args);
    const int count = args.count < 0 ? 25 : args.count;
    if (args.kind == "stiefel") {
        const auto report = cdzero::sweep_stiefel_zero_divisors(level, count, args.seed);
        ordered_json payload;
        payload["schema_version"] = cdzero::kSchemaVersion;
        payload["kind"] = "stiefel";
        const ordered_json base = cdzero::json_of(report);
        for (const auto& [key, value] : base.items())
            if (key != "schema_version") payload[key] = value;
        emit_json(payload);
    } else if (args.kind == "identities") {
        emit_json(identity_sweep(level, count, args.seed));
    } else {
        usage_error("unknown sweep kind '" + args.kind + "' (expected stiefel or identities)");
    }
    return 0;
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> tokens(argv + 1, argv + argc);
    if (tokens.empty()) {
        std::cerr << kUsage;
        return 2;
    }
    for (const auto& tok : tokens)
        if (tok == "-h" || tok == "--help") {
            std::cout << kUsage;
            return 0;
        }
    const std::string command = tokens.front();
    tokens.erase(tokens.begin());

    if (command == "construct") {
        if (tokens.empty()) usage_error("construct needs a kind");
        const std::string kind = tokens.front();
        tokens.erase(tokens.begin());
        return run_construct(kind, parse_flags(tokens, false));
    }
    if (command == "mul") return run_binary_op("mul", parse_flags(tokens, false));
    if (command == "conj") return run_unary_op("conj", parse_flags(tokens, false));
    if (command == "tilde") return run_unary_op("tilde", parse_flags(tokens, false));
    if (command == "hat") return run_unary_op("hat", parse_flags(tokens, false));
    if (command == "spectrum") return run_spectrum(parse_flags(tokens, false));
    if (command == "annihilator") return run_annihilator(parse_flags(tokens, false));
    if (command == "classify") return run_classify(parse_flags(tokens, false));
    if (command == "verify-paper") return run_verify(parse_flags(tokens, true));
    if (command == "sweep") return run_sweep(parse_flags(tokens, false));
    usage_error("unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const cdzero::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cdzero::LevelMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cdzero::NotDoublyPureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
