#include "commands.hpp"

int main(int argc, char** argv) { return kitaev::cli::run(argc, argv); }
