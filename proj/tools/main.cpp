#include "ringstar/cli.hpp"

int main(int argc, char** argv) { return ringstar::run_cli(argc, argv); }
