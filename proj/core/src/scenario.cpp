#include "nptx/scenario.h"

#include "nptx/errors.h"

namespace nptx {

void validate(const TransferScenario& sc) {
    validate(sc.mu0);
    validate(sc.mu1S);
    validate(sc.mu1T);
    const bool d0 = is_discrete(sc.mu0);
    if (is_discrete(sc.mu1S) != d0 || is_discrete(sc.mu1T) != d0)
        throw DomainMismatchError("scenario '" + sc.id + "': laws mix discrete and continuous domains");
    if (!(sc.alpha > 0.0 && sc.alpha < 1.0))
        throw ConfigError("scenario '" + sc.id + "': alpha must lie in (0,1)");
    if (!(sc.slack_r >= 0.0))
        throw ConfigError("scenario '" + sc.id + "': slack_r must be >= 0");
    if (d0 != is_discrete_class(sc.cls))
        throw DomainMismatchError("scenario '" + sc.id + "': hypothesis class domain does not match the laws");
}

}  // namespace nptx
