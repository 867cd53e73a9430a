#include "nsforge/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  const nsforge::cli::CommandResult r = nsforge::cli::run(std::vector<std::string>(argv, argv + argc));
  if (r.status == nsforge::cli::Status::Error)
    std::cerr << r.render();
  else if (!r.written)
    std::cout << r.render();
  return r.exit_code();
}
