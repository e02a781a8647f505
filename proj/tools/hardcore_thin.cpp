#include <iostream>

int main() {
    std::cerr << "hardcore-thin: experiment harness not wired up yet\n";
    return 2;
}
