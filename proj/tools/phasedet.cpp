#include <iostream>

#include "phasedet/cli.hpp"

int main(int argc, char** argv) { return phasedet::run_cli(argc, argv, std::cout, std::cerr); }
