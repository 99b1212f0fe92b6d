#include <iostream>

#include "qgames/cli.hpp"

int main(int argc, char** argv) { return qgames::cli::run_cli(argc, argv, std::cout, std::cerr); }
