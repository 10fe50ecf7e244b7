#include <iostream>

#include "htwist/cli.hpp"

int main(int argc, char** argv) { return htwist::cli::run(argc, argv, std::cout, std::cerr); }
