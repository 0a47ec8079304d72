#include <iostream>

#include "kerrqle/cli.hpp"

int main(int argc, char** argv) { return kerrqle::cli::run(argc, argv, std::cout, std::cerr); }
