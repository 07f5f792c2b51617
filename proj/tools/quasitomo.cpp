#include <iostream>

#include "quasitomo/io.hpp"

int main(int argc, char** argv) { return quasitomo::run_cli(argc, argv, std::cout, std::cerr); }
