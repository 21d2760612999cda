#include "cq/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cq::cli::run(argc, argv, std::cout, std::cerr); }
