#include <iostream>

#include "realid/cli.hpp"

int main(int argc, char** argv) { return realid::run_cli(argc, argv, std::cout, std::cerr); }
