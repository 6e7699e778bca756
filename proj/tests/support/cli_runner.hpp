#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

namespace fixture {

// Runs the CLI with `args`, stdout/stderr appended to `log`. Returns the exit code.
inline int run_cli(const std::string& args, const std::filesystem::path& log) {
  const std::string cmd = std::string(DOCRE_CLI_PATH) + " " + args + " >>" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace fixture
