#include <iostream>

#include "pqed/cli.hpp"

int main(int argc, char** argv) { return pqed::cli::run(argc, argv, std::cout, std::cerr); }
