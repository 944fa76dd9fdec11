#include <iostream>

#include "gss/pair_chain.hpp"

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::cout << "gss cli placeholder\n";
    return 0;
}
