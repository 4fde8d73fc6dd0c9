#include <iostream>

#include "isohyp/cli.hpp"

int main(int argc, char** argv) { return isohyp::run_cli(argc, argv, std::cout, std::cerr); }
