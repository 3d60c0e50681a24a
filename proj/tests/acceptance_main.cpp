#include <iostream>

#include "latomo/acceptance.hpp"

int main(int argc, char** argv) {
  latomo::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--quick") options.quick = true;
  }
  const auto results = latomo::run_acceptance(options, std::cout);
  return latomo::acceptance_exit_code(results);
}
