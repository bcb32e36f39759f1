#ifndef WALAB_FAMILIES_HPP
#define WALAB_FAMILIES_HPP

#include <cstddef>
#include <string>

#include "walab/fsa.hpp"
#include "walab/hankel.hpp"

namespace walab {

// The chained-product machine over {0,1}: a guessing start state, an
// n-step corridor entered and left on 1s, and an absorbing final state.
// Counts pairs of 1s exactly n letters apart, so under parity acceptance
// on a word xy with |x| = |y| = n it computes the inner product of x and
// y. States s, m_1..m_n, f (n + 2 total). Requires n >= 1.
Fsa waprod_fsa(std::size_t n);

// The inequality machine over {0,1}: guesses a position, remembers the
// bit seen there through a left (saw 0) or right (saw 1) corridor of
// length n, and accepts when the mirrored position carries the opposite
// bit. For u, v of length n it accepts uv iff u != v. States s, l_1..l_n,
// r_1..r_n, f (2n + 2 total). Requires n >= 1.
Fsa neq_nfa(std::size_t n);

// GF(2)-valued oracle tagged "ip:<n>": on xy with |x| = |y| = n the
// positionwise-AND parity of x and y; 0 on every other length.
MembershipOracle ip_kernel_oracle(std::size_t n);

// GF(2)-valued oracle tagged "neq:<n>": on uv with |u| = |v| = n whether
// u != v; 0 on every other length.
MembershipOracle neq_oracle(std::size_t n);

// Name-addressed oracle lookup: "ip:<n>", "neq:<n>", or "waprod:<n>" (the
// chained-product machine's parity language). Throws ParseError on any
// other shape.
MembershipOracle family_oracle(const std::string& name);

// Name-addressed machine lookup for the file-emitting families:
// "waprod:<n>" or "neq:<n>". "ip:<n>" is a kernel without a machine and is
// rejected like any other unknown name.
Fsa family_fsa(const std::string& name);

} // namespace walab

#endif
