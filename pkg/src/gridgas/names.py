"""Canonical variable and constraint names.

Builders, the audit oracle, and the reporter all address the model through
these helpers, so a solution file keyed by name is the only interchange
needed between them.
"""

from __future__ import annotations


def t_tag(slot: int) -> str:
    return f"t{slot:04d}"

def d_tag(day: int) -> str:
    return f"d{day:03d}"


# power-side variables ------------------------------------------------------

def xop(n: str, i: str) -> str: return f"xop[{n}][{i}]"
def xest(n: str, i: str) -> str: return f"xest[{n}][{i}]"
def xdec(n: str, i: str) -> str: return f"xdec[{n}][{i}]"
def ucx(n: str, t: int, i: str) -> str: return f"x[{n}][{t_tag(t)}][{i}]"
def ucup(n: str, t: int, i: str) -> str: return f"xup[{n}][{t_tag(t)}][{i}]"
def ucdn(n: str, t: int, i: str) -> str: return f"xdn[{n}][{t_tag(t)}][{i}]"
def p(n: str, t: int, i: str) -> str: return f"p[{n}][{t_tag(t)}][{i}]"
def fe(line: str, t: int) -> str: return f"fe[{line}][{t_tag(t)}]"
def theta(n: str, t: int) -> str: return f"theta[{n}][{t_tag(t)}]"
def ze(line: str) -> str: return f"ze[{line}]"
def sch(n: str, t: int, r: str) -> str: return f"sch[{n}][{t_tag(t)}][{r}]"
def sdis(n: str, t: int, r: str) -> str: return f"sdis[{n}][{t_tag(t)}][{r}]"
def slev(n: str, t: int, r: str) -> str: return f"slev[{n}][{t_tag(t)}][{r}]"
def ycd(n: str, r: str) -> str: return f"ycd[{n}][{r}]"
def ylev(n: str, r: str) -> str: return f"ylev[{n}][{r}]"
def srem(n: str, tau: int, r: str) -> str: return f"srem[{n}][{d_tag(tau)}][{r}]"
def sday(n: str, day: int, r: str) -> str: return f"sday[{n}][{d_tag(day)}][{r}]"
def kcapt(n: str, t: int) -> str: return f"kcapt[{n}][{t_tag(t)}]"
def kpipe(n: str) -> str: return f"kpipe[{n}]"
def ae(n: str, t: int) -> str: return f"ae[{n}][{t_tag(t)}]"

# gas-side variables ---------------------------------------------------------

def zg(pipe: str) -> str: return f"zg[{pipe}]"
def g(k: str, day: int) -> str: return f"g[{k}][{d_tag(day)}]"
def fg(pipe: str, day: int) -> str: return f"fg[{pipe}][{d_tag(day)}]"
def fge(k: str, n: str, tau: int) -> str: return f"fge[{k}][{n}][{d_tag(tau)}]"
def fgl(k: str, j: str, day: int) -> str: return f"fgl[{k}][{j}][{d_tag(day)}]"
def fvg(j: str, k: str, day: int) -> str: return f"fvg[{j}][{k}][{d_tag(day)}]"
def sstr(j: str, day: int) -> str: return f"sstr[{j}][{d_tag(day)}]"
def sliq(j: str, day: int) -> str: return f"sliq[{j}][{d_tag(day)}]"
def svpr(j: str, day: int) -> str: return f"svpr[{j}][{d_tag(day)}]"
def xgstr(j: str) -> str: return f"xgstr[{j}]"
def xvpr(j: str) -> str: return f"xvpr[{j}]"
def alcdf(k: str, day: int) -> str: return f"alcdf[{k}][{d_tag(day)}]"
def ag(k: str, day: int) -> str: return f"ag[{k}][{d_tag(day)}]"

E_POWER = "emis[power]"
E_GAS = "emis[gas]"

# constraint rows -------------------------------------------------------------

def c_inv(n: str, i: str) -> str: return f"inv[{n}][{i}]"
def c_chron(n: str, t: int, i: str) -> str: return f"chron[{n}][{t_tag(t)}][{i}]"
def c_commit(n: str, t: int, i: str) -> str: return f"commit[{n}][{t_tag(t)}][{i}]"
def c_pmax(n: str, t: int, i: str) -> str: return f"pmax[{n}][{t_tag(t)}][{i}]"
def c_pmin(n: str, t: int, i: str) -> str: return f"pmin[{n}][{t_tag(t)}][{i}]"
def c_rampup(n: str, t: int, i: str) -> str: return f"rampup[{n}][{t_tag(t)}][{i}]"
def c_rampdn(n: str, t: int, i: str) -> str: return f"rampdn[{n}][{t_tag(t)}][{i}]"
def c_vrecap(n: str, t: int, i: str) -> str: return f"vrecap[{n}][{t_tag(t)}][{i}]"
def c_cap(n: str, t: int, i: str) -> str: return f"cap[{n}][{t_tag(t)}][{i}]"
def c_bal(n: str, t: int) -> str: return f"bal[{n}][{t_tag(t)}]"
def c_fcap_hi(line: str, t: int) -> str: return f"fcap_hi[{line}][{t_tag(t)}]"
def c_fcap_lo(line: str, t: int) -> str: return f"fcap_lo[{line}][{t_tag(t)}]"
def c_dcflow(line: str, t: int) -> str: return f"dcflow[{line}][{t_tag(t)}]"
def c_dcdev_hi(line: str, t: int) -> str: return f"dcdev_hi[{line}][{t_tag(t)}]"
def c_dcdev_lo(line: str, t: int) -> str: return f"dcdev_lo[{line}][{t_tag(t)}]"
def c_refangle(t: int) -> str: return f"refangle[{t_tag(t)}]"
def c_sbal(n: str, t: int, r: str) -> str: return f"sbal[{n}][{t_tag(t)}][{r}]"
def c_sday_chain(n: str, day: int, r: str) -> str:
    return f"sday_chain[{n}][{d_tag(day)}][{r}]"
def c_sday_anchor(n: str, tau: int, r: str) -> str:
    return f"sday_anchor[{n}][{d_tag(tau)}][{r}]"
def c_chcap(n: str, t: int, r: str) -> str: return f"chcap[{n}][{t_tag(t)}][{r}]"
def c_discap(n: str, t: int, r: str) -> str: return f"discap[{n}][{t_tag(t)}][{r}]"
def c_levcap(n: str, t: int, r: str) -> str: return f"levcap[{n}][{t_tag(t)}][{r}]"
C_RPS = "rps"
def c_resource(cls: str) -> str: return f"resource[{cls}]"
def c_ccs_capt(n: str, t: int) -> str: return f"ccs_capt[{n}][{t_tag(t)}]"
def c_ccs_pipe(n: str, t: int) -> str: return f"ccs_pipe[{n}][{t_tag(t)}]"
C_CCS_CAP = "ccs_cap"
def c_gbal(k: str, day: int) -> str: return f"gbal[{k}][{d_tag(day)}]"
def c_supply(k: str, day: int) -> str: return f"supply[{k}][{d_tag(day)}]"
def c_pcap(pipe: str, day: int) -> str: return f"pcap[{pipe}][{d_tag(day)}]"
def c_liqsum(j: str, day: int) -> str: return f"liqsum[{j}][{d_tag(day)}]"
def c_vprsum(j: str, day: int) -> str: return f"vprsum[{j}][{d_tag(day)}]"
def c_gsbal(j: str, day: int) -> str: return f"gsbal[{j}][{d_tag(day)}]"
def c_vprcap(j: str, day: int) -> str: return f"vprcap[{j}][{d_tag(day)}]"
def c_strcap(j: str, day: int) -> str: return f"strcap[{j}][{d_tag(day)}]"
def c_liqcap(j: str, day: int) -> str: return f"liqcap[{j}][{d_tag(day)}]"
def c_fuel(n: str, tau: int) -> str: return f"fuel[{n}][{d_tag(tau)}]"
C_EDEF_POWER = "edef[power]"
C_EDEF_GAS = "edef[gas]"
C_ECAP = "ecap"
