#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdlib>
#include <string>

// Path of the command-line binary under test, passed by ctest as
// "--cli <path>" (doctest leaves unknown options alone).
std::string g_cli_path;

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];
  }
  if (g_cli_path.empty()) {
    if (const char* env = std::getenv("CROSSIM_CLI")) g_cli_path = env;
  }
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
