#pragma once

#include <ostream>

namespace bbr::cli {

/// Exit codes of every subcommand.
enum Exit : int {
  ok = 0,
  failed = 1,      // budget exceeded, wrong table, or not-in-class answers
  usage = 2,       // bad flags, invalid spec, unreadable files
  capability = 3,  // a brute-force cap or search budget was exceeded
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bbr::cli
