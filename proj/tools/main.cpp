#include "cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return mdsmm::run_cli(argc, argv, std::cout, std::cerr); }
