#include <iostream>

#include "jetinv/cli.hpp"

int main(int argc, char** argv) { return jetinv::cli::run(argc, argv, std::cout, std::cerr); }
