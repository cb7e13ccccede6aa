#include <iostream>

#include "formkit/cli.hpp"

int main(int argc, char** argv) { return formkit::cli::run(argc, argv, std::cout, std::cerr); }
