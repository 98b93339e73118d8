//! Acceptance suite for hermicode; see tests/acceptance.rs.
