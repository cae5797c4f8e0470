#include <iostream>

#include "wh/cli.hpp"

int main(int argc, char** argv) { return wh::cli::run_main(argc, argv, std::cout); }
