#pragma once

#include <stdexcept>
#include <string>

namespace edvw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define EDVW_ERROR(name) \
  struct name : Error {  \
    using Error::Error;  \
  }

// hypergraph
EDVW_ERROR(NonPositiveWeight);
EDVW_ERROR(UnknownVertex);
EDVW_ERROR(DuplicateMember);
EDVW_ERROR(VertexNotInEdge);
EDVW_ERROR(ParseError);

// splitting
EDVW_ERROR(DomainError);
EDVW_ERROR(FamilyError);
EDVW_ERROR(EdgeTooLarge);

// reduction
EDVW_ERROR(EdgeTooSmall);
EDVW_ERROR(TooManyAuxiliaries);
EDVW_ERROR(NegativeCoefficient);

// sparsify
EDVW_ERROR(NonConcavePoints);
EDVW_ERROR(InfiniteInitialSlope);
EDVW_ERROR(NoTangentFound);
EDVW_ERROR(MalformedEnvelope);

// flownet
EDVW_ERROR(SameTerminal);
EDVW_ERROR(GraphTooLarge);
EDVW_ERROR(OverlappingSeeds);
EDVW_ERROR(EmptySeeds);
EDVW_ERROR(InfeasibleSeeds);

// textpipe
EDVW_ERROR(EmptyVocabulary);
EDVW_ERROR(KeyMismatch);

#undef EDVW_ERROR

}  // namespace edvw
