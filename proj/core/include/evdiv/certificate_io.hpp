#pragma once

#include <string>

#include "evdiv/construct.hpp"

namespace evdiv {

// Certificate wire format. All integers are decimal strings; eps is a
// rational "p/q" (or "0" in strong mode). Keys:
//   {alpha, D, A, mode, params:{L, Lprime, M, m1, m2, n, N},
//    P, P_split, Q, Q_split, eps, checks:{approx, split_P, split_Q, q_magnitude}}
std::string certificate_to_json(const ApproxCertificate& cert, bool pretty = true);
ApproxCertificate certificate_from_json(const std::string& text);

// Rational from "p/q" or "p" text.
mpq_class parse_rational(const std::string& text);
std::string format_rational(const mpq_class& q);

}  // namespace evdiv
