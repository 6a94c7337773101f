#include "actrack/cli.hpp"

int main(int argc, char** argv) { return actrack::cli::main(argc, argv); }
