#include <iostream>

#include "apnforge/cli.hpp"

int main(int argc, char** argv) { return apnforge::run_cli(argc, argv, std::cout, std::cerr); }
