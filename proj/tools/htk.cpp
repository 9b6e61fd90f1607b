#include "htk/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return htk::cli_main(argc, argv, std::cin, std::cout, std::cerr); }
