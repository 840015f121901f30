#include <iostream>

#include "qconfine/cli.hpp"

int main(int argc, char** argv)
{
    return qconfine::cli::run(argc, argv, std::cout, std::cerr);
}
