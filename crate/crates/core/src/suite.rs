//! Verification suites (in progress).
