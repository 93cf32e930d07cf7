#include "curvelast/cli.hpp"

int main(int argc, char** argv) { return curvelast::run_cli(argc, argv); }
