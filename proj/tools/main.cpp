#include "actisleep/cli.hpp"

int main(int argc, char** argv) { return actisleep::run_cli(argc, argv); }
