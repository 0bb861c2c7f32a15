#include <iostream>

#include "kravchuk_cli/cli.hpp"

int main(int argc, char** argv) { return kravchuk::cli::run(argc, argv, std::cout, std::cerr); }
