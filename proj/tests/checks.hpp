#pragma once

#include <doctest.h>

#include <complex>

#include "qpencil/core.hpp"

namespace qpencil::test {

// runs f expecting an Error with the given code; anything else is reported
// through doctest with both names spelled out
template <typename F>
void expect_error(Errc want, F&& f) {
  try {
    f();
    FAIL_CHECK("no exception, expected " << errc_name(want));
  } catch (const Error& e) {
    CHECK_MESSAGE(e.code() == want, "expected " << errc_name(want) << ", got "
                                                << errc_name(e.code()) << " ("
                                                << e.what() << ")");
  }
}

inline bool close(Cx a, Cx b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_rel(Cx a, Cx b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace qpencil::test
