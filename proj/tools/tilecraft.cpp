#include <iostream>

#include "tilecraft/cli.hpp"

int main(int argc, char** argv) { return tilecraft::cli::run(argc, argv, std::cout, std::cerr); }
