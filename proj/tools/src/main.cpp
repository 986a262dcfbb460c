#include <iostream>

#include "petersson_cli/cli.hpp"

int main(int argc, char** argv) { return petersson::cli::run_cli(argc, argv, std::cout, std::cerr); }
