#include <iostream>

#include "sacontrol/cli.hpp"

int main(int argc, char** argv) { return sacontrol::cli::run(argc, argv, std::cout, std::cerr); }
