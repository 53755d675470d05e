#ifndef LDQL_CERTIFICATE_IO_H
#define LDQL_CERTIFICATE_IO_H

#include <string>

#include "ldql/safeness.h"

namespace ldql {

/// Machine format for safeness reports and certificates (JSON). Embedded
/// queries are carried in the textual LDQL syntax; a certificate parsed back
/// from this format passes validate_certificate against the original query.
std::string report_to_json(const SafenessReport& report);
std::string certificate_to_json(const SafenessCertificate& cert);
CertPtr certificate_from_json(const std::string& text);

}  // namespace ldql

#endif
