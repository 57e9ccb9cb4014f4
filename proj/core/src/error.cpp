#include "pmt/error.hpp"

namespace pmt {

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::usage:
        case ErrorKind::config:
            return 2;
        case ErrorKind::data:
            return 3;
        case ErrorKind::numerical:
            return 4;
    }
    return 1;
}

}  // namespace pmt
