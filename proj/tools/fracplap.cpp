#include <iostream>

#include "fracplap/cli.hpp"

int main(int argc, char** argv) { return fracplap::run_cli(argc, argv, std::cout, std::cerr); }
