#include <iostream>

#include "spheregh/cli.hpp"

int main(int argc, char** argv) { return sgh::run_cli(argc, argv, std::cout, std::cerr); }
