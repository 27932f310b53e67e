#include <iostream>

#include "vtgi/cli.hpp"

int main(int argc, char **argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = vtgi::cli::run(args);
  if (r.payload.is_null()) {
    std::cout << r.summary;
    return r.exit_code;
  }
  std::cout << r.payload.dump(2) << '\n';
  std::cerr << r.summary << '\n';
  return r.exit_code;
}
