#include <iostream>

#include "entrates/cli.hpp"

int main(int argc, char** argv) { return entrates::cli::run(argc, argv, std::cout, std::cerr); }
