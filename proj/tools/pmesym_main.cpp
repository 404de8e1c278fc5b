#include "pmesym/cli.hpp"

int main(int argc, char** argv) { return pmesym::cli_run(argc, argv); }
