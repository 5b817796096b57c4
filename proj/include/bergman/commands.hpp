#pragma once
// Subcommand bodies of bergman_lab. Each returns the process exit status:
//   0  success, every check passed
//   1  a check failed (envelope, verification suite, cp1 deviation)
//   2  invalid input
//   3  numerical failure (quadrature, factorisation)
// Reports go to cfg.out (standard output when empty or "-"); summaries go
// to `console`, or to `diag` when the report itself occupies standard output.

#include <iosfwd>
#include <string>

#include "bergman/run_config.hpp"

namespace bergman {

int cmd_sweep(const RunConfig& cfg, std::ostream& console, std::ostream& diag);
int cmd_verify(const RunConfig& cfg, std::ostream& console, std::ostream& diag);
int cmd_cp1(const RunConfig& cfg, long m, int samples, std::ostream& console, std::ostream& diag);
int cmd_moments(const RunConfig& cfg, int p_max, std::ostream& console, std::ostream& diag);
// Assembles the truncated Gram matrix for cfg (first m of the list) or, when
// in_path is nonempty, loads one; prints I_00 by the three routes.
int cmd_gram(const RunConfig& cfg, const std::string& in_path, std::ostream& console,
             std::ostream& diag);

} // namespace bergman
