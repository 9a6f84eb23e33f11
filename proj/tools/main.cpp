#include <iostream>

#include "spreclone/cli.hpp"

int main(int argc, char** argv) { return spreclone::cli::run(argc, argv, std::cout, std::cerr); }
