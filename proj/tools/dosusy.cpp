#include <dosusy/cli.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    try {
        return dosusy::cli::main_with(argc, argv, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return dosusy::cli::VerificationFailure;
    }
}
