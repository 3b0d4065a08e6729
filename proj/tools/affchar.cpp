#include <iostream>

#include "affchar/cli.hpp"

int main(int argc, char** argv) { return affchar::run_cli(argc, argv, std::cout, std::cerr); }
