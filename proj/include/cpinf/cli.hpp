#ifndef CPINF_CLI_HPP
#define CPINF_CLI_HPP

#include <iosfwd>

namespace cpinf::cli {

/// Dispatch the command line. Exit codes: 0 success, 1 domain errors,
/// 2 I/O or parse errors. Errors go to `err` as single-line JSON with
/// "error" and "detail" fields. Deterministic for identical inputs.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cpinf::cli

#endif
