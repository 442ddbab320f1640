#ifndef SKA_ERRORS_HPP
#define SKA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ska {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// configuration / parameter problems (CLI exit code 1)
struct invalid_params : error { using error::error; };
struct param_violation : invalid_params { using invalid_params::invalid_params; };
struct mismatched_field : invalid_params { using invalid_params::invalid_params; };
struct length_mismatch : invalid_params { using invalid_params::invalid_params; };
struct wrong_count : invalid_params { using invalid_params::invalid_params; };
struct duplicate_abscissa : invalid_params { using invalid_params::invalid_params; };
struct invalid_partition : invalid_params { using invalid_params::invalid_params; };
struct no_shared_material : invalid_params { using invalid_params::invalid_params; };

// runtime property violations (CLI exit code 2)
struct property_violation : error { using error::error; };
struct zero_inverse : property_violation { using property_violation::property_violation; };
struct insufficient_shares : property_violation { using property_violation::property_violation; };
struct inconsistent_shares : property_violation { using property_violation::property_violation; };
struct bad_mask : property_violation { using property_violation::property_violation; };
struct already_discussed : property_violation { using property_violation::property_violation; };
struct arithmetic_overflow : property_violation { using property_violation::property_violation; };

// enumeration caps (CLI exit code 3)
struct budget_exceeded : error { using error::error; };

} // namespace ska

#endif
