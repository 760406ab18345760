#include <iostream>

#include "lab.hpp"

int main(int argc, char** argv) { return lab::run(argc, argv, std::cout, std::cerr); }
