#include <iostream>

#include "owcsim/cli.hpp"

int main(int argc, char** argv) { return owcsim::cli_main(argc, argv, std::cout, std::cerr); }
