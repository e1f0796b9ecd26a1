#include <iostream>

#include "esph/cli/app.hpp"

int main(int argc, char** argv) { return esph::cli::run(argc, argv, std::cout, std::cerr); }
