#include "walab/families.hpp"

#include <vector>

#include "walab/errors.hpp"

namespace walab {

namespace {

const Alphabet& bits() {
    static const Alphabet a({"0", "1"});
    return a;
}

std::string numbered(const std::string& stem, std::size_t i) {
    return stem + std::to_string(i);
}

// Parses the "<n>" of a family name; the family must have n >= 1.
std::size_t family_index(const std::string& name, const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("family index in '" + name + "' is not a number");
    const unsigned long n = std::stoul(text);
    if (n == 0)
        throw ParseError("family '" + name + "' needs an index of at least 1");
    return n;
}

} // namespace

Fsa waprod_fsa(std::size_t n) {
    if (n == 0) throw Error("waprod family needs n >= 1");
    std::vector<std::string> states{"s"};
    for (std::size_t i = 1; i <= n; ++i) states.push_back(numbered("m", i));
    states.push_back("f");
    std::vector<FsaTransition> delta{{"s", "0", "s"},
                                     {"s", "1", "s"},
                                     {"s", "1", "m1"},
                                     {numbered("m", n), "1", "f"},
                                     {"f", "0", "f"},
                                     {"f", "1", "f"}};
    for (std::size_t i = 1; i < n; ++i)
        for (const auto& sym : bits().symbols())
            delta.push_back({numbered("m", i), sym, numbered("m", i + 1)});
    return Fsa(std::move(states), bits(), delta, {"s"}, {"f"});
}

Fsa neq_nfa(std::size_t n) {
    if (n == 0) throw Error("neq family needs n >= 1");
    std::vector<std::string> states{"s"};
    for (std::size_t i = 1; i <= n; ++i) states.push_back(numbered("l", i));
    for (std::size_t i = 1; i <= n; ++i) states.push_back(numbered("r", i));
    states.push_back("f");
    std::vector<FsaTransition> delta{{"s", "0", "s"},
                                     {"s", "1", "s"},
                                     {"s", "0", "l1"},
                                     {"s", "1", "r1"},
                                     {numbered("l", n), "1", "f"},
                                     {numbered("r", n), "0", "f"},
                                     {"f", "0", "f"},
                                     {"f", "1", "f"}};
    for (std::size_t i = 1; i < n; ++i)
        for (const auto& stem : {"l", "r"})
            for (const auto& sym : bits().symbols())
                delta.push_back({numbered(stem, i), sym, numbered(stem, i + 1)});
    return Fsa(std::move(states), bits(), delta, {"s"}, {"f"});
}

MembershipOracle ip_kernel_oracle(std::size_t n) {
    auto g = FieldSpec::gf2();
    return MembershipOracle(
        g, bits(),
        [n, g](const Word& w) {
            if (w.size() != 2 * n) return Scalar::zero(g);
            long parity = 0;
            for (std::size_t i = 0; i < n; ++i)
                parity ^= (w[i] == "1" && w[n + i] == "1") ? 1 : 0;
            return Scalar(g, parity);
        },
        "ip:" + std::to_string(n));
}

MembershipOracle neq_oracle(std::size_t n) {
    auto g = FieldSpec::gf2();
    return MembershipOracle(
        g, bits(),
        [n, g](const Word& w) {
            if (w.size() != 2 * n) return Scalar::zero(g);
            for (std::size_t i = 0; i < n; ++i)
                if (w[i] != w[n + i]) return Scalar::one(g);
            return Scalar::zero(g);
        },
        "neq:" + std::to_string(n));
}

MembershipOracle family_oracle(const std::string& name) {
    const auto colon = name.find(':');
    if (colon == std::string::npos)
        throw ParseError("family name '" + name + "' is not of the form kind:n");
    const std::string kind = name.substr(0, colon);
    const std::size_t n = family_index(name, name.substr(colon + 1));
    if (kind == "ip") return ip_kernel_oracle(n);
    if (kind == "neq") return neq_oracle(n);
    if (kind == "waprod")
        return fsa_oracle(waprod_fsa(n), Semantics::wa2, FieldSpec::gf2(),
                          "waprod:" + std::to_string(n));
    throw ParseError("unknown family '" + kind + "'");
}

Fsa family_fsa(const std::string& name) {
    const auto colon = name.find(':');
    if (colon == std::string::npos)
        throw ParseError("family name '" + name + "' is not of the form kind:n");
    const std::string kind = name.substr(0, colon);
    const std::size_t n = family_index(name, name.substr(colon + 1));
    if (kind == "waprod") return waprod_fsa(n);
    if (kind == "neq") return neq_nfa(n);
    throw ParseError("no machine family '" + kind +
                     "' (expected waprod:<n> or neq:<n>)");
}

} // namespace walab
