#include <iostream>

#include "qpgg/cli.hpp"

int main(int argc, char** argv) { return qpgg::cli::run(argc, argv, std::cout, std::cerr); }
