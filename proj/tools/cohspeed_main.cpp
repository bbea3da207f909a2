#include <iostream>

#include "cohspeed/cli.hpp"

int main(int argc, char** argv) { return cohspeed::run_cli(argc, argv, std::cout, std::cerr); }
