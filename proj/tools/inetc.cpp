#include <iostream>

#include "inet/cli.hpp"

int main(int argc, char** argv) { return inet::runCli(argc, argv, std::cout, std::cerr); }
