#include "commands.hpp"

int main(int argc, char** argv) { return lorentzseq::cli::run(argc, argv); }
