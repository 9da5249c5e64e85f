#include <iostream>

#include "hpasm_cli/cli.hpp"

int main(int argc, char** argv) { return hpasm::cli::run(argc, argv, std::cout, std::cerr); }
