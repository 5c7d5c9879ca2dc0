#include <iostream>

#include "h2tep/cli.hpp"

int main(int argc, char** argv) { return h2tep::cli::run(argc, argv, std::cout, std::cerr); }
