#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "iso/bignat.hpp"
#include "iso/error.hpp"

namespace iso {

enum class Domain { vertex, edge };

inline const char* to_string(Domain d) { return d == Domain::vertex ? "vertex" : "edge"; }

// Weights on ids 1..size() plus the provenance needed to reproduce them.
struct WeightFunction {
    Domain domain = Domain::edge;
    std::vector<BigNat> w; // w[id-1]
    std::string scheme;
    std::vector<std::pair<std::string, std::string>> params;
    std::uint64_t seed = 0;
    std::vector<BigNat> primes;
    BigNat declared_bound = 0; // every weight is strictly below this
    std::uint64_t random_bits = 0;

    std::size_t size() const { return w.size(); }

    const BigNat& operator()(int id) const {
        if (id < 1 || static_cast<std::size_t>(id) > w.size())
            throw PreconditionError("weight function: id " + std::to_string(id) + " outside domain of size " +
                                    std::to_string(w.size()));
        return w[id - 1];
    }

    BigNat weight(const std::vector<int>& ids) const {
        BigNat s = 0;
        for (int id : ids) s += (*this)(id);
        return s;
    }

    BigNat max_weight() const {
        BigNat m = 0;
        for (const auto& x : w) m = std::max(m, x);
        return m;
    }

    std::string param(const std::string& key) const {
        for (auto& [k, v] : params)
            if (k == key) return v;
        return {};
    }
};

inline WeightFunction plain_weights(Domain d, std::vector<BigNat> w) {
    WeightFunction f;
    f.domain = d;
    f.w = std::move(w);
    f.scheme = "explicit";
    f.declared_bound = f.max_weight() + 1;
    return f;
}

// ---- TSV form ------------------------------------------------------------
// A comment block (scheme, domain, params, seed, primes, bound, random bits)
// followed by one "id<TAB>weight" line per id.

inline void write_weights(std::ostream& out, const WeightFunction& f) {
    out << "# scheme=" << f.scheme << '\n';
    out << "# domain=" << to_string(f.domain) << '\n';
    for (auto& [k, v] : f.params) out << "# param " << k << '=' << v << '\n';
    out << "# seed=" << f.seed << '\n';
    out << "# primes=";
    for (std::size_t i = 0; i < f.primes.size(); ++i) out << (i ? " " : "") << f.primes[i];
    out << '\n';
    out << "# bound=" << f.declared_bound << '\n';
    out << "# random_bits=" << f.random_bits << '\n';
    for (std::size_t i = 0; i < f.w.size(); ++i) out << i + 1 << '\t' << f.w[i] << '\n';
}

inline WeightFunction parse_weights(std::istream& in) {
    WeightFunction f;
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(line.find_first_not_of("# "));
            auto take = [&](const std::string& key, std::string& dst) {
                if (body.rfind(key, 0) != 0) return false;
                dst = body.substr(key.size());
                return true;
            };
            std::string v;
            if (take("scheme=", v)) f.scheme = v;
            else if (take("domain=", v)) f.domain = v == "vertex" ? Domain::vertex : Domain::edge;
            else if (take("seed=", v)) f.seed = std::stoull(v);
            else if (take("bound=", v)) f.declared_bound = parse_bignat(v);
            else if (take("random_bits=", v)) f.random_bits = std::stoull(v);
            else if (take("primes=", v)) {
                std::istringstream ps(v);
                std::string p;
                while (ps >> p) f.primes.push_back(parse_bignat(p));
            } else if (take("param ", v)) {
                auto eq = v.find('=');
                if (eq == std::string::npos) throw ParseError(ParseErrorKind::malformed_line, ln, line);
                f.params.emplace_back(v.substr(0, eq), v.substr(eq + 1));
            }
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError(ParseErrorKind::malformed_line, ln, line);
        long long id = std::stoll(line.substr(0, tab));
        if (id != static_cast<long long>(f.w.size()) + 1) throw ParseError(ParseErrorKind::malformed_line, ln, "ids must be 1,2,3,...");
        f.w.push_back(parse_bignat(line.substr(tab + 1)));
    }
    return f;
}

inline WeightFunction read_weights_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(ParseErrorKind::io, 0, "cannot open " + path);
    return parse_weights(in);
}

} // namespace iso
