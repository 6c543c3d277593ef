#include <iostream>

#include "rectinv/cli.hpp"

int main(int argc, char** argv) { return rectinv::cli_main(argc, argv, std::cout, std::cerr); }
