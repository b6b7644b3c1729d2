#include "sysarith/cli.hpp"

int main(int argc, char** argv) { return sysarith::cli::run(argc, argv); }
