#include <iostream>

#include "lkllt/cli.hpp"

int main(int argc, char** argv) { return lkllt::run_cli(argc, argv, std::cout, std::cerr); }
