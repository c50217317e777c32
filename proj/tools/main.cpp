#include "fsm_jacobi/cli.hpp"

int main(int argc, char** argv) {
    return fsm_jacobi::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
