// gkg: element-order spectra, Gruenberg-Kegel graphs, and lemma verification
// for concrete finite groups.
//
// Subcommands:
//   spectrum "<descriptor>"                 JSON spectrum of a group
//   graph "<descriptor>" [--dot|--json]     GK graph export
//   verify <claim> <corpus-file>            JSON-lines verification reports
//   enumerate <primes> [caps]               simple groups with pi(S) in the set
//   bound <primes> [caps]                   cyclic-subgroup counting pipeline
//   liedata show <spec>                     structural record of a Lie type
//
// Exit codes: 0 ok, 1 refutation found, 2 usage/parse error, 3 cap exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gkg/theorems.hpp"

namespace {

constexpr uint64_t kHardCap = gkg::kDefaultEnumerationCap;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

uint64_t default_cap() {
    const char* env = std::getenv("GKG_CAP");
    if (!env) return kHardCap;
    char* end = nullptr;
    uint64_t v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0 || v > kHardCap)
        throw UsageError("GKG_CAP must be a positive integer at most " + std::to_string(kHardCap));
    return v;
}

uint64_t parse_positive(const std::string& s, const std::string& what) {
    char* end = nullptr;
    uint64_t v = std::strtoull(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || v == 0)
        throw UsageError(what + " must be a positive integer");
    return v;
}

std::set<uint64_t> parse_prime_set(const std::string& arg) {
    std::set<uint64_t> primes;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw UsageError("empty entry in prime list");
        uint64_t p = parse_positive(tok, "prime");
        if (!gkg::is_prime(p)) throw UsageError(tok + " is not prime");
        primes.insert(p);
    }
    if (primes.empty()) throw UsageError("prime list is empty");
    return primes;
}

struct Flags {
    std::vector<std::string> positional;
    bool dot = false, json = false;
    uint64_t cap;
    gkg::EnumerationCaps caps;

    explicit Flags(const std::vector<std::string>& args) : cap(default_cap()) {
        caps.group_cap = cap;
        for (size_t i = 0; i < args.size(); ++i) {
            const std::string& a = args[i];
            auto next = [&]() -> const std::string& {
                if (i + 1 >= args.size()) throw UsageError(a + " needs a value");
                return args[++i];
            };
            if (a == "--dot") dot = true;
            else if (a == "--json") json = true;
            else if (a == "--cap") {
                cap = parse_positive(next(), "--cap");
                if (cap > kHardCap)
                    throw UsageError("--cap exceeds the hard limit " + std::to_string(kHardCap));
                caps.group_cap = cap;
            } else if (a == "--qcap") caps.qcap = parse_positive(next(), "--qcap");
            else if (a == "--ncap") caps.ncap = static_cast<uint32_t>(parse_positive(next(), "--ncap"));
            else if (a == "--altcap") caps.altcap = static_cast<uint32_t>(parse_positive(next(), "--altcap"));
            else if (!a.empty() && a[0] == '-') throw UsageError("unknown flag: " + a);
            else positional.push_back(a);
        }
        if (dot && json) throw UsageError("--dot and --json are mutually exclusive");
    }
};

int cmd_spectrum(const Flags& f) {
    if (f.positional.size() != 1) throw UsageError("spectrum needs exactly one descriptor");
    gkg::ConcreteGroup g = gkg::build_from_descriptor(f.positional[0], f.cap);
    gkg::Spectrum s = gkg::spectrum_bruteforce(g);
    std::cout << gkg::spectrum_to_json(gkg::parse_descriptor(f.positional[0]).to_string(), s)
              << '\n';
    return 0;
}

int cmd_graph(const Flags& f) {
    if (f.positional.size() != 1) throw UsageError("graph needs exactly one descriptor");
    gkg::ConcreteGroup g = gkg::build_from_descriptor(f.positional[0], f.cap);
    gkg::PrimeGraph graph = gkg::gk(gkg::spectrum_bruteforce(g));
    if (f.dot) {
        std::cout << gkg::graph_to_dot(graph);
    } else {
        std::cout << gkg::graph_to_json(graph) << '\n';
    }
    return 0;
}

int cmd_verify(const Flags& f) {
    if (f.positional.size() != 2) throw UsageError("verify needs a claim and a corpus file");
    const std::string& claim = f.positional[0];
    bool known = false;
    for (const auto& c : gkg::registered_claims()) known = known || c == claim;
    if (!known) throw UsageError("unknown claim: " + claim);
    std::ifstream in(f.positional[1]);
    if (!in) throw UsageError("cannot open corpus file: " + f.positional[1]);
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto lines = gkg::parse_corpus_lines(buffer.str());
    bool refuted = false;
    double total_runtime = 0.0;
    for (const auto& line : lines) {
        gkg::VerificationReport rep = gkg::run_verifier_line(claim, line, f.cap);
        std::cout << rep.to_json_line() << '\n';
        total_runtime += rep.runtime_seconds;
        refuted = refuted || rep.verdict == gkg::Verdict::Refuted;
    }
    std::cerr << claim << ": " << lines.size() << " witnesses in " << total_runtime << "s\n";
    return refuted ? 1 : 0;
}

int cmd_enumerate(const Flags& f) {
    if (f.positional.size() != 1) throw UsageError("enumerate needs a comma-separated prime list");
    auto classes = gkg::enumerate_simple_with_pi(parse_prime_set(f.positional[0]), f.caps);
    std::cout << gkg::enumeration_to_text(classes);
    return 0;
}

int cmd_bound(const Flags& f) {
    if (f.positional.size() != 1) throw UsageError("bound needs a comma-separated prime list");
    gkg::BoundReport rep = gkg::count_bound_pipeline(parse_prime_set(f.positional[0]), f.caps);
    std::cout << rep.to_text();
    return rep.within_bound ? 0 : 1;
}

int cmd_liedata(const Flags& f) {
    if (f.positional.size() != 2 || f.positional[0] != "show")
        throw UsageError("usage: liedata show <spec>");
    std::cout << gkg::show_record(gkg::parse_group_spec(f.positional[1]));
    return 0;
}

const char* kUsage =
    "usage: gkg <command> ...\n"
    "  spectrum \"<descriptor>\"              print the spectrum as JSON\n"
    "  graph \"<descriptor>\" [--dot|--json]  print the GK graph (JSON default)\n"
    "  verify <claim> <corpus-file>           run a registered verifier\n"
    "  enumerate <p1,p2,...> [--qcap --ncap --altcap]\n"
    "  bound <p1,p2,...> [--qcap --ncap --altcap]\n"
    "  liedata show <spec>\n"
    "descriptors: 'FAMILY n q [projective] [rtimes-field r]', e.g. 'SL 2 7 projective'\n"
    "specs: compact Lie names, e.g. A1(9), 2A2(3), B2(3), 3D4(2)\n"
    "claims: lemma-lie-type lemma-diag-p lemma-adj-2 lemma-field lemma-frob theorem-main\n"
    "flags: --cap N caps |G| for enumeration (env GKG_CAP sets the default)\n";

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        std::cout << kUsage;
        return args.empty() ? 2 : 0;
    }
    std::string cmd = args[0];
    args.erase(args.begin());
    try {
        Flags flags(args);
        if (cmd == "spectrum") return cmd_spectrum(flags);
        if (cmd == "graph") return cmd_graph(flags);
        if (cmd == "verify") return cmd_verify(flags);
        if (cmd == "enumerate") return cmd_enumerate(flags);
        if (cmd == "bound") return cmd_bound(flags);
        if (cmd == "liedata") return cmd_liedata(flags);
        throw UsageError("unknown command: " + cmd);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const gkg::DescriptorError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const gkg::SpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const gkg::CapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
}
