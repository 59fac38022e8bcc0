#include <iostream>

#include "symctr/cli.hpp"

int main(int argc, char **argv) { return symctr::cli::run(argc, argv, std::cout, std::cerr); }
