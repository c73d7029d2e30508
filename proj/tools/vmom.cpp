#include "vm/cli.hpp"

int main(int argc, char** argv) { return vm::run(argc, argv); }
