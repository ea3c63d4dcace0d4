#include <iostream>

#include "skewcorr/cli.hpp"

int main(int argc, char** argv) { return skewcorr::cli::run(argc, argv, std::cout, std::cerr); }
