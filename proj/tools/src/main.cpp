#include "rkrcli/commands.hpp"

int main(int argc, char** argv) { return rkrcli::run_cli(argc, argv); }
