#include <iostream>

#include "fiveprime/cli.hpp"

int main(int argc, char** argv) { return fiveprime::dispatch(argc, argv, std::cout, std::cerr); }
