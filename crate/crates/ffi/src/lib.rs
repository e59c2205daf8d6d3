// Copyright 2026 The symdepol Authors
// SPDX-License-Identifier: Apache-2.0

//! C ABI over `symdepol`.
//!
//! Objects cross the boundary as opaque handles created by `sd_*_new`,
//! `sd_*_from_json` or a named constructor and released with the matching
//! `sd_*_free`. Every function returns an [`SdStatus`]; on failure the
//! message is available from [`sd_last_error_message`] on the same thread.
//! Strings handed out by the library are released with [`sd_string_free`].
//! Matrices are dense, row-major, with real and imaginary parts in separate
//! arrays.

#![allow(clippy::missing_safety_doc, clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use symdepol::channel::{first_order_kraus, verify_channel_with, KrausChannel, LindbladGenerator};
use symdepol::dynamics::{asymptotic_state, asymptotic_state_auto, evolve, fixed_points};
use symdepol::liealg::{collective_spin, spin_irrep, Representation};
use symdepol::scenario::{run, ScenarioConfig};
use symdepol::state::{check_state, StateTolerance};
use symdepol::zoo::{
    damping_channel, dephasing_channel, depolarizing_qubit_cpm, depolarizing_qubit_lindblad,
    pauli_product_channel, symmetric_depolarizer,
};
use symdepol::{ComplexMatrix, Error, C64};

/// Result of every call. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Shape = 4,
    Argument = 5,
    InvalidState = 6,
    Precondition = 7,
    InconsistentRepresentation = 8,
    Numerical = 9,
    Convergence = 10,
    Io = 11,
    Panic = 12,
}

impl From<&Error> for SdStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Shape(_) => SdStatus::Shape,
            Error::Precondition(_) => SdStatus::Precondition,
            Error::Argument(_) => SdStatus::Argument,
            Error::InvalidState(_) => SdStatus::InvalidState,
            Error::InconsistentRepresentation(_) => SdStatus::InconsistentRepresentation,
            Error::Parse(_) | Error::Json(_) => SdStatus::Parse,
            Error::Numerical(_) | Error::NoConvergence { .. } | Error::Propagation { .. } => {
                SdStatus::Numerical
            }
            Error::Convergence { .. } => SdStatus::Convergence,
            Error::Io(_) => SdStatus::Io,
        }
    }
}

/// Dense complex matrix.
pub struct SdMatrix {
    inner: ComplexMatrix,
}

/// Lie-algebra representation with its invariant blocks.
pub struct SdRepresentation {
    inner: Representation,
}

/// Lindblad generator.
pub struct SdGenerator {
    inner: LindbladGenerator,
}

/// Kraus channel.
pub struct SdChannel {
    inner: KrausChannel,
}

struct Failure {
    status: SdStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            status: SdStatus::from(&e),
            message: e.to_string(),
        }
    }
}

fn null(what: &str) -> Failure {
    Failure {
        status: SdStatus::NullPointer,
        message: format!("{what} is null"),
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SdStatus::Ok,
        Ok(Err(fail)) => {
            set_last_error(&fail.message);
            fail.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {msg}"));
            SdStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_slot<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure {
        status: SdStatus::InvalidUtf8,
        message: format!("{what}: {e}"),
    })
}

unsafe fn read_slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn give<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn give_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|e| Failure {
        status: SdStatus::InvalidUtf8,
        message: e.to_string(),
    })
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()).into())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<*mut c_char, Failure> {
    give_string(serde_json::to_string(value).map_err(Error::from)?)
}

// errors and strings --------------------------------------------------------

/// Message of the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// matrices -----------------------------------------------------------------

/// Builds a `rows`×`cols` matrix from row-major real and imaginary parts.
/// `im` may be null for a real matrix.
#[no_mangle]
pub unsafe extern "C" fn sd_matrix_new(
    rows: usize,
    cols: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut SdMatrix,
) -> SdStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        let n = rows.checked_mul(cols).ok_or_else(|| Failure::from(Error::Shape("size overflows".into())))?;
        let re = read_slice(re, n, "re")?;
        let data: Vec<C64> = if im.is_null() {
            re.iter().map(|&x| C64::new(x, 0.0)).collect()
        } else {
            let im = read_slice(im, n, "im")?;
            re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)).collect()
        };
        *out = give(SdMatrix {
            inner: ComplexMatrix::new(rows, cols, data)?,
        });
        Ok(())
    })
}

/// Parses nested `[re, im]` rows.
#[no_mangle]
pub unsafe extern "C" fn sd_matrix_from_json(json: *const c_char, out: *mut *mut SdMatrix) -> SdStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = give(SdMatrix {
            inner: parse(read_str(json, "json")?)?,
        });
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_matrix_to_json(m: *const SdMatrix, out: *mut *mut c_char) -> SdStatus {
    guard(|| {
        let m = borrow(m, "matrix")?;
        *out_slot(out, "out")? = to_json(&m.inner)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_matrix_shape(m: *const SdMatrix, rows: *mut usize, cols: *mut usize) -> SdStatus {
    guard(|| {
        let m = borrow(m, "matrix")?;
        *out_slot(rows, "rows")? = m.inner.rows();
        *out_slot(cols, "cols")? = m.inner.cols();
        Ok(())
    })
}

/// Reads entry `(i, j)`.
#[no_mangle]
pub unsafe extern "C" fn sd_matrix_get(
    m: *const SdMatrix,
    i: usize,
    j: usize,
    re: *mut f64,
    im: *mut f64,
) -> SdStatus {
    guard(|| {
        let m = borrow(m, "matrix")?;
        if i >= m.inner.rows() || j >= m.inner.cols() {
            return Err(Error::Argument(format!(
                "index ({i}, {j}) outside {}x{}",
                m.inner.rows(),
                m.inner.cols()
            ))
            .into());
        }
        let z = m.inner[(i, j)];
        *out_slot(re, "re")? = z.re;
        *out_slot(im, "im")? = z.im;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_matrix_free(m: *mut SdMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

// representations ----------------------------------------------------------

/// Spin-j irrep with j = two_j/2.
#[no_mangle]
pub unsafe extern "C" fn sd_representation_spin(two_j: u32, out: *mut *mut SdRepresentation) -> SdStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        if two_j > 63 {
            return Err(Error::Argument(format!("two_j = {two_j} exceeds 63")).into());
        }
        *out = give(SdRepresentation {
            inner: spin_irrep(two_j),
        });
        Ok(())
    })
}

/// Total spin of `qubits` qubits.
#[no_mangle]
pub unsafe extern "C" fn sd_representation_collective(
    qubits: usize,
    out: *mut *mut SdRepresentation,
) -> SdStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = give(SdRepresentation {
            inner: collective_spin(qubits)?,
        });
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_representation_from_json(
    json: *const c_char,
    out: *mut *mut SdRepresentation,
) -> SdStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = give(SdRepresentation {
            inner: parse(read_str(json, "json")?)?,
        });
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_representation_to_json(
    rep: *const SdRepresentation,
    out: *mut *mut c_char,
) -> SdStatus {
    guard(|| {
        let rep = borrow(rep, "representation")?;
        *out_slot(out, "out")? = to_json(&rep.inner)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_representation_dim(rep: *const SdRepresentation, dim: *mut usize) -> SdStatus {
    guard(|| {
        *out_slot(dim, "dim")? = borrow(rep, "representation")?.inner.dim();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_representation_block_count(
    rep: *const SdRepresentation,
    count: *mut usize,
) -> SdStatus {
    guard(|| {
        *out_slot(count, "count")? = borrow(rep, "representation")?.inner.blocks().len();
        Ok(())
    })
}

/// Spin label, Casimir value and dimension of block `k`.
#[no_mangle]
pub unsafe extern "C" fn sd_representation_block(
    rep: *const SdRepresentation,
    k: usize,
    spin: *mut f64,
    casimir: *mut f64,
    dim: *mut usize,
) -> SdStatus {
    guard(|| {
        let rep = borrow(rep, "representation")?;
        let b = rep
            .inner
            .blocks()
            .get(k)
            .ok_or_else(|| Failure::from(Error::Argument(format!("no block {k}"))))?;
        *out_slot(spin, "spin")? = b.label;
        *out_slot(casimir, "casimir")? = b.casimir;
        *out_slot(dim, "dim")? = b.dim;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_representation_free(rep: *mut SdRepresentation) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

// generators ---------------------------------------------------------------

#[no_mangle]
pub unsafe extern "C" fn sd_generator_from_json(json: *const c_char, out: *mut *mut SdGenerator) -> SdStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = give(SdGenerator {
            inner: parse(read_str(json, "json")?)?,
        });
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_generator_to_json(g: *const SdGenerator, out: *mut *mut c_char) -> SdStatus {
    guard(|| {
        let g = borrow(g, "generator")?;
        *out_slot(out, "out")? = to_json(&g.inner)?;
        Ok(())
    })
}

/// Qubit depolarizer contracting the Bloch vector at rate `gamma`.
#[no_mangle]
pub unsafe extern "C" fn sd_generator_qubit_depolarizer(gamma: f64, out: *mut *mut SdGenerator) -> SdStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = give(SdGenerator {
            inner: depolarizing_qubit_lindblad(gamma)?,
        });
        Ok(())
    })
}

/// Which symmetry-adapted generator to build from a representation.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdGeneratorKind {
    /// Jumps along the Cartan elements.
    Dephasing = 0,
    /// Jumps along the lowering operators.
    Damping = 1,
    /// Jumps along both raising and lowering operators.
    SymmetricDepolarizer = 2,
}

/// Builds a generator on `rep` with one rate per Cartan element (dephasing)
/// or per root pair (damping, symmetric depolarizer).
#[no_mangle]
pub unsafe extern "C" fn sd_generator_symmetric(
    rep: *const SdRepresentation,
    kind: SdGeneratorKind,
    rates: *const f64,
    n_rates: usize,
    out: *mut *mut SdGenerator,
) -> SdStatus {
    guard(|| {
        let rep = &borrow(rep, "representation")?.inner;
        let rates = read_slice(rates, n_rates, "rates")?;
        let out = out_slot(out, "out")?;
        let inner = match kind {
            SdGeneratorKind::Dephasing => dephasing_channel(rep, rates)?,
            SdGeneratorKind::Damping => damping_channel(rep, rates)?,
            SdGeneratorKind::SymmetricDepolarizer => symmetric_depolarizer(rep, rates)?,
        };
        *out = give(SdGenerator { inner });
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_generator_dim(g: *const SdGenerator, dim: *mut usize) -> SdStatus {
    guard(|| {
        *out_slot(dim, "dim")? = borrow(g, "generator")?.inner.dim();
        Ok(())
    })
}

/// Dimension of the Liouvillian kernel.
#[no_mangle]
pub unsafe extern "C" fn sd_generator_fixed_point_count(g: *const SdGenerator, count: *mut usize) -> SdStatus {
    guard(|| {
        let g = borrow(g, "generator")?;
        *out_slot(count, "count")? = fixed_points(&g.inner)?.len();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_generator_free(g: *mut SdGenerator) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

// channels -----------------------------------------------------------------

/// Parses `{"dim": d, "kraus_ops": [...]}`. Completeness is not enforced so
/// that arbitrary sets can be passed to [`sd_channel_verify`].
#[no_mangle]
pub unsafe extern "C" fn sd_channel_from_json(json: *const c_char, out: *mut *mut SdChannel) -> SdStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = give(SdChannel {
            inner: parse(read_str(json, "json")?)?,
        });
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_channel_to_json(ch: *const SdChannel, out: *mut *mut c_char) -> SdStatus {
    guard(|| {
        let ch = borrow(ch, "channel")?;
        *out_slot(out, "out")? = to_json(&ch.inner)?;
        Ok(())
    })
}

/// `(1−p)ρ + (p/3)Σ σ_j ρ σ_j`.
#[no_mangle]
pub unsafe extern "C" fn sd_channel_qubit_depolarizer(p: f64, out: *mut *mut SdChannel) -> SdStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = give(SdChannel {
            inner: depolarizing_qubit_cpm(p)?,
        });
        Ok(())
    })
}

/// Independent depolarization of `n` qubits.
#[no_mangle]
pub unsafe extern "C" fn sd_channel_pauli_product(n: usize, p: f64, out: *mut *mut SdChannel) -> SdStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = give(SdChannel {
            inner: pauli_product_channel(n, p)?,
        });
        Ok(())
    })
}

/// First-order Kraus map of `g` over a step `tau`.
#[no_mangle]
pub unsafe extern "C" fn sd_channel_first_order(g: *const SdGenerator, tau: f64, out: *mut *mut SdChannel) -> SdStatus {
    guard(|| {
        let g = borrow(g, "generator")?;
        let out = out_slot(out, "out")?;
        *out = give(SdChannel {
            inner: first_order_kraus(&g.inner, tau)?,
        });
        Ok(())
    })
}

/// Trace-preservation residual, smallest Choi eigenvalue and the verdict
/// against `tol` (used for both checks).
#[no_mangle]
pub unsafe extern "C" fn sd_channel_verify(
    ch: *const SdChannel,
    tol: f64,
    tp_residual: *mut f64,
    choi_min_eig: *mut f64,
    pass: *mut bool,
) -> SdStatus {
    guard(|| {
        let ch = borrow(ch, "channel")?;
        if !(tol > 0.0) {
            return Err(Error::Argument(format!("tolerance must be positive, got {tol}")).into());
        }
        let rep = verify_channel_with(&ch.inner, tol, tol)?;
        *out_slot(tp_residual, "tp_residual")? = rep.tp_residual;
        *out_slot(choi_min_eig, "choi_min_eig")? = rep.choi_min_eig;
        *out_slot(pass, "pass")? = rep.pass;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_channel_apply(
    ch: *const SdChannel,
    rho: *const SdMatrix,
    out: *mut *mut SdMatrix,
) -> SdStatus {
    guard(|| {
        let ch = borrow(ch, "channel")?;
        let rho = borrow(rho, "rho")?;
        let out = out_slot(out, "out")?;
        *out = give(SdMatrix {
            inner: ch.inner.apply(&rho.inner)?,
        });
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sd_channel_free(ch: *mut SdChannel) {
    if !ch.is_null() {
        drop(Box::from_raw(ch));
    }
}

// dynamics -----------------------------------------------------------------

/// `ρ(t)` under `g` from the density matrix `rho0`.
#[no_mangle]
pub unsafe extern "C" fn sd_propagate(
    g: *const SdGenerator,
    rho0: *const SdMatrix,
    t: f64,
    out: *mut *mut SdMatrix,
) -> SdStatus {
    guard(|| {
        let g = &borrow(g, "generator")?.inner;
        let rho0 = &borrow(rho0, "rho0")?.inner;
        let out = out_slot(out, "out")?;
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Argument(format!("time must be finite and nonnegative, got {t}")).into());
        }
        check_state(rho0, g.dim(), StateTolerance::default())?;
        let rho = evolve(&g.liouvillian(), rho0, t)?;
        check_state(&rho, g.dim(), StateTolerance::default()).map_err(|e| Error::Propagation {
            time: t,
            reason: e.to_string(),
        })?;
        *out = give(SdMatrix { inner: rho });
        Ok(())
    })
}

/// Long-time state. A non-positive `horizon` selects the automatic horizon.
#[no_mangle]
pub unsafe extern "C" fn sd_asymptotic_state(
    g: *const SdGenerator,
    rho0: *const SdMatrix,
    horizon: f64,
    tol: f64,
    out: *mut *mut SdMatrix,
) -> SdStatus {
    guard(|| {
        let g = &borrow(g, "generator")?.inner;
        let rho0 = &borrow(rho0, "rho0")?.inner;
        let out = out_slot(out, "out")?;
        let inner = if horizon > 0.0 {
            asymptotic_state(g, rho0, horizon, tol)?
        } else {
            asymptotic_state_auto(g, rho0, tol)?
        };
        *out = give(SdMatrix { inner });
        Ok(())
    })
}

// scenarios ----------------------------------------------------------------

/// Runs a scenario from its JSON configuration and returns the report JSON.
/// Nothing is written to disk.
#[no_mangle]
pub unsafe extern "C" fn sd_scenario_run(config_json: *const c_char, report_json: *mut *mut c_char) -> SdStatus {
    guard(|| {
        let cfg = ScenarioConfig::from_json(read_str(config_json, "config_json")?)?;
        let out = out_slot(report_json, "report_json")?;
        *out = give_string(run(&cfg)?.report.to_json_pretty())?;
        Ok(())
    })
}
