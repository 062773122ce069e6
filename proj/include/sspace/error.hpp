#ifndef SSPACE_ERROR_HPP
#define SSPACE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sspace {

enum class Errc {
  // topology
  EmptyUniverse,
  InvalidIdentifier,
  DuplicatePoint,
  MemberOutsideUniverse,
  PointOutsideUniverse,
  OverlapWithUniverse,
  NotATopology,
  ResourceLimit,
  // algebra
  InvalidTable,
  InvalidDescriptor,
  UnknownOperation,
  MissingIdentityPrerequisite,
  ArityMismatch,
  // space
  UnknownNeighborhood,
  InvalidAssignment,
  UnverifiedStructure,
  EmptyCollection,
  EmptySubfamily,
  CarrierTooSmall,
  ValidationFailed,
  // constructions
  NonBijectiveReplacement,
  InvalidPartition,
  NotACongruence,
  QuotientTooSmall,
  DescriptorLost,
  NotAGroup,
  NotASubgroup,
  NotNormal,
  InvalidDirectSystem,
  IllDefinedOperation,
  // measure
  InvalidRational,
  MissingWeight,
  InconsistentWeight,
  NotMeasurable,
  SpecViolation,
  NoEquivalentInC,
  MissingProposal,
  ProposalRejected,
  // lattice
  NotAPartialOrder,
  NotALattice,
  TooSmall,
  // io
  SyntaxError,
  UnknownCommand,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::EmptyUniverse: return "EmptyUniverse";
    case Errc::InvalidIdentifier: return "InvalidIdentifier";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::MemberOutsideUniverse: return "MemberOutsideUniverse";
    case Errc::PointOutsideUniverse: return "PointOutsideUniverse";
    case Errc::OverlapWithUniverse: return "OverlapWithUniverse";
    case Errc::NotATopology: return "NotATopology";
    case Errc::ResourceLimit: return "ResourceLimit";
    case Errc::InvalidTable: return "InvalidTable";
    case Errc::InvalidDescriptor: return "InvalidDescriptor";
    case Errc::UnknownOperation: return "UnknownOperation";
    case Errc::MissingIdentityPrerequisite: return "MissingIdentityPrerequisite";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::UnknownNeighborhood: return "UnknownNeighborhood";
    case Errc::InvalidAssignment: return "InvalidAssignment";
    case Errc::UnverifiedStructure: return "UnverifiedStructure";
    case Errc::EmptyCollection: return "EmptyCollection";
    case Errc::EmptySubfamily: return "EmptySubfamily";
    case Errc::CarrierTooSmall: return "CarrierTooSmall";
    case Errc::ValidationFailed: return "ValidationFailed";
    case Errc::NonBijectiveReplacement: return "NonBijectiveReplacement";
    case Errc::InvalidPartition: return "InvalidPartition";
    case Errc::NotACongruence: return "NotACongruence";
    case Errc::QuotientTooSmall: return "QuotientTooSmall";
    case Errc::DescriptorLost: return "DescriptorLost";
    case Errc::NotAGroup: return "NotAGroup";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::NotNormal: return "NotNormal";
    case Errc::InvalidDirectSystem: return "InvalidDirectSystem";
    case Errc::IllDefinedOperation: return "IllDefinedOperation";
    case Errc::InvalidRational: return "InvalidRational";
    case Errc::MissingWeight: return "MissingWeight";
    case Errc::InconsistentWeight: return "InconsistentWeight";
    case Errc::NotMeasurable: return "NotMeasurable";
    case Errc::SpecViolation: return "SpecViolation";
    case Errc::NoEquivalentInC: return "NoEquivalentInC";
    case Errc::MissingProposal: return "MissingProposal";
    case Errc::ProposalRejected: return "ProposalRejected";
    case Errc::NotAPartialOrder: return "NotAPartialOrder";
    case Errc::NotALattice: return "NotALattice";
    case Errc::TooSmall: return "TooSmall";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownCommand: return "UnknownCommand";
  }
  return "Unknown";
}

// Exception thrown by every fallible operation of the library. The witness
// holds point, neighborhood or operation names (never internal indices).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::vector<std::string> witness = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        message_(what),
        witness_(std::move(witness)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
  std::vector<std::string> witness_;
};

}  // namespace sspace

#endif  // SSPACE_ERROR_HPP
