#!/usr/bin/env python3
"""
Módulo de Equilíbrios e Bifurcações - Simulador de Bolhas Periódicas
Pontos fixos, expoentes característicos, classificação, linhas críticas
(dobra g0/gc, cúspide, Hopf, fronteira nó-foco), regiões A-E e varreduras
de bifurcação.

Os pontos fixos não triviais são as raízes u = x* de
    phi(u) = ln u - b u exp(g u),    com z* = exp(g u).
"""

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import bisect, brentq

from modelo import (ErroDominio, ErroPrecondicao, ModelParams, State,
                    jacobian)
from registro import log

# Varredura de raízes
U_MIN = 1e-3
U_MAX = 1e9
PONTOS_GRADE = 4096
TOL_RAIZ = 1e-12
TOL_QUASE_DEGENERADO = 1e-6

TOL_DEGENERADO = 1e-8
TOL_FRONTEIRA = 1e-6
TOL_BISSECCAO = 1e-10

# Cúspide da curva de dobra: s = g u satisfaz s^2 + 3 s + 1 = 0
S_CUSPIDE = (-3.0 + math.sqrt(5.0)) / 2.0
U_CUSPIDE = math.exp((1.0 + math.sqrt(5.0)) / 2.0)

INVERSO_E = 1.0 / math.e
B_NO_FOCO_MAX = 4.0 / (3.0 * math.e)


class Kind(str, Enum):
    STABLE_FOCUS = "stable focus"
    STABLE_NODE = "stable node"
    UNSTABLE_FOCUS = "unstable focus"
    UNSTABLE_NODE = "unstable node"
    SADDLE = "saddle"
    DEGENERATE = "degenerate"

    @property
    def estavel(self) -> bool:
        return self in (Kind.STABLE_FOCUS, Kind.STABLE_NODE)


class RegionLabel(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"


@dataclass(frozen=True)
class FixedPoint:
    location: State
    eigenvalues: Tuple[complex, complex]
    kind: Kind
    branch_index: int = 0
    near_degenerate: bool = False

    def como_dict(self) -> Dict:
        return {
            'x': self.location.x,
            'z': self.location.z,
            'eigenvalues': [[v.real, v.imag] for v in self.eigenvalues],
            'kind': self.kind.value,
            'branch_index': self.branch_index,
            'near_degenerate': self.near_degenerate,
        }


class Cuspide(NamedTuple):
    b0: float
    g: float
    u: float


@dataclass
class CriticalLines:
    fold_samples: List[Tuple[float, float, float]]
    hopf_samples: List[Tuple[float, float]]
    cusp: Cuspide
    node_focus_samples: List[Tuple[float, float]]
    bogdanov_takens: Tuple[float, float] = (math.nan, math.nan)
    ponto_duplo: Tuple[float, float] = (math.nan, math.nan)

    def como_dataframe(self) -> pd.DataFrame:
        """Linhas curva,b,g; a dobra vira 'gc' abaixo da cúspide e 'g0' acima."""
        linhas = [{'curva': 'gc' if u < self.cusp.u else 'g0', 'b': b, 'g': g}
                  for u, b, g in self.fold_samples]
        linhas += [{'curva': 'hopf', 'b': b, 'g': g} for b, g in self.hopf_samples]
        linhas += [{'curva': 'g_n', 'b': b, 'g': g} for b, g in self.node_focus_samples]
        for nome, (b, g) in (('cusp', (self.cusp.b0, self.cusp.g)),
                             ('bogdanov_takens', self.bogdanov_takens),
                             ('ponto_duplo', self.ponto_duplo)):
            linhas.append({'curva': nome, 'b': b, 'g': g})
        return pd.DataFrame(linhas, columns=['curva', 'b', 'g'])


@dataclass
class RegionResult:
    """Resultado de region_label: rótulo (None na fronteira) e diagnóstico."""
    label: Optional[RegionLabel]
    boundary: bool = False
    nearest: Tuple[RegionLabel, ...] = ()
    census_label: Optional[RegionLabel] = None
    inequality_label: Optional[RegionLabel] = None

    @property
    def concorda(self) -> bool:
        return self.census_label == self.inequality_label


@dataclass
class Anotacao:
    nome: str
    valor: float
    tipo: str


@dataclass
class BifurcationBranch:
    varying_parameter: str
    fixed_parameter: str
    fixed_value: float
    grid: np.ndarray
    points: List[List[FixedPoint]]
    annotations: List[Anotacao] = field(default_factory=list)

    def como_dataframe(self) -> pd.DataFrame:
        """Uma linha por (ponto da grade, ponto fixo): param,x_star,z_star,kind,branch."""
        linhas = []
        for valor, pontos in zip(self.grid, self.points):
            for fp in pontos:
                linhas.append({
                    'param': float(valor),
                    'x_star': fp.location.x,
                    'z_star': fp.location.z,
                    'kind': fp.kind.value,
                    'branch': fp.branch_index,
                })
        return pd.DataFrame(linhas, columns=['param', 'x_star', 'z_star', 'kind', 'branch'])


# ---------------------------------------------------------------------------
# Classificação

def classify(eigenvalues: Sequence[complex], jacobiano=None) -> Kind:
    """
    Classificação planar padrão de um ponto fixo.

    Args:
        eigenvalues: Par de autovalores
        jacobiano: JacobianMatrix opcional; quando é múltiplo da identidade o
            autovalor repetido é um nó estrela, não um caso degenerado

    Returns:
        Kind
    """
    l1, l2 = (complex(v) for v in eigenvalues)
    if not all(math.isfinite(p) for v in (l1, l2) for p in (v.real, v.imag)):
        raise ErroDominio(f"Autovalores não finitos: {eigenvalues}")

    if abs(l1.real) < TOL_DEGENERADO or abs(l2.real) < TOL_DEGENERADO:
        return Kind.DEGENERATE

    discriminante = ((l1 - l2) ** 2).real
    estrela = (jacobiano is not None and jacobiano.j12 == 0.0 and jacobiano.j21 == 0.0
               and jacobiano.j11 == jacobiano.j22)
    if abs(discriminante) < TOL_DEGENERADO and not estrela:
        return Kind.DEGENERATE

    if discriminante < 0:
        return Kind.STABLE_FOCUS if l1.real < 0 else Kind.UNSTABLE_FOCUS
    if l1.real * l2.real < 0:
        return Kind.SADDLE
    return Kind.STABLE_NODE if l1.real < 0 else Kind.UNSTABLE_NODE


def _ordenar(autovalores) -> Tuple[complex, complex]:
    w = sorted((complex(v) for v in autovalores), key=lambda v: (v.real, v.imag))
    return w[0], w[1]


def trivial_fixed_points(params: Optional[ModelParams] = None) -> List[FixedPoint]:
    """
    Pontos fixos triviais {0,0}, {1,0} e {0,1}, instáveis para quaisquer (b, g).

    Os autovalores nesses pontos não dependem de (b, g).
    """
    params = params or ModelParams(0.0, 0.0)
    pontos = []
    for x, z in ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)):
        estado = State(x, z)
        j = jacobian(params, estado)
        autovalores = _ordenar(j.autovalores())
        pontos.append(FixedPoint(estado, autovalores, classify(autovalores, j), 0))
    return pontos


def characteristic_exponents(params: ModelParams, fp_location: State) -> Tuple[complex, complex]:
    """
    Expoentes característicos em forma fechada:
    lambda = [b x z - 2 -+ x sqrt(b z (4 g + b z))] / 2.

    Returns:
        (lambda_1, lambda_2), o primeiro com o sinal negativo da raiz
    """
    x, z = fp_location.x, fp_location.z
    if x <= 0 or z <= 0:
        raise ErroPrecondicao(f"({x}, {z}) não é ponto fixo não trivial")
    b, g = params.b, params.g
    residuo_x = abs(math.log(x) - b * x * z) / max(1.0, abs(math.log(x)))
    residuo_z = abs(math.log(z) - g * x) / max(1.0, abs(math.log(z)))
    if residuo_x > 1e-8 or residuo_z > 1e-8:
        raise ErroPrecondicao(
            f"({x}, {z}) não satisfaz x = exp(bxz), z = exp(gx) (resíduos {residuo_x:.2e}, {residuo_z:.2e})")

    traco = b * x * z - 2.0
    raiz = x * cmath.sqrt(b * z * (4.0 * g + b * z))
    return (traco - raiz) / 2.0, (traco + raiz) / 2.0


# ---------------------------------------------------------------------------
# Raízes de phi

def _exp_parte(b: float, g: float, u):
    """b u exp(g u) calculado em log para não estourar (argumento limitado a 600)."""
    if b == 0.0:
        return np.zeros_like(u)
    arg = np.clip(math.log(abs(b)) + np.log(u) + g * u, -700.0, 600.0)
    return math.copysign(1.0, b) * np.exp(arg)


def _phi(u, b: float, g: float):
    return np.log(u) - _exp_parte(b, g, u)


def _u_dphi(u, b: float, g: float):
    """u * phi'(u) = 1 - b u exp(g u) (1 + g u)."""
    return 1.0 - _exp_parte(b, g, u) * (1.0 + g * u)


def _d2phi(u: float, b: float, g: float) -> float:
    return -1.0 / u ** 2 - b * math.exp(g * u) * g * (2.0 + g * u)


def _limite_superior(g: float) -> float:
    # x1* ~ ln(.)/|g| quando g -> 0-: amplia a varredura para alcançá-lo
    if g < 0:
        return max(U_MAX, 60.0 / abs(g))
    return U_MAX


def _zeros_por_sinal(funcao, grade: np.ndarray, valores: np.ndarray) -> List[float]:
    zeros = []
    for i in range(len(grade) - 1):
        fa, fb = valores[i], valores[i + 1]
        if fa == 0.0:
            zeros.append(float(grade[i]))
        elif fa * fb < 0:
            zeros.append(brentq(funcao, grade[i], grade[i + 1], xtol=TOL_RAIZ, rtol=4 * np.finfo(float).eps,
                                maxiter=200))
    if len(valores) and valores[-1] == 0.0:
        zeros.append(float(grade[-1]))
    return zeros


def phi_roots(b: float, g: float) -> List[float]:
    """
    Todas as raízes de phi em u > 0, em ordem crescente.

    Colchetes pela mudança de sinal numa grade logarítmica de 4096 pontos,
    completada pelos pontos críticos de phi (zeros de phi') para que duas
    raízes muito próximas de uma dobra sejam separadas; depois brentq e um
    passo de Newton.
    """
    if not (math.isfinite(b) and math.isfinite(g)):
        raise ErroDominio(f"Parâmetros não finitos: b={b}, g={g}")

    grade = np.logspace(math.log10(U_MIN), math.log10(_limite_superior(g)), PONTOS_GRADE)
    with np.errstate(over='ignore', invalid='ignore'):
        derivada = _u_dphi(grade, b, g)
    criticos = _zeros_por_sinal(lambda u: float(_u_dphi(u, b, g)), grade, derivada)

    pontos = np.unique(np.concatenate([grade, np.asarray(criticos, dtype=float)]))
    valores = _phi(pontos, b, g)
    raizes = _zeros_por_sinal(lambda u: float(_phi(u, b, g)), pontos, valores)

    polidas = []
    for u in raizes:
        derivada_u = float(_u_dphi(u, b, g)) / u
        if derivada_u != 0.0:
            candidato = u - float(_phi(u, b, g)) / derivada_u
            if candidato > 0 and abs(float(_phi(candidato, b, g))) <= abs(float(_phi(u, b, g))):
                u = candidato
        polidas.append(u)

    unicas: List[float] = []
    for u in sorted(polidas):
        if not unicas or abs(u - unicas[-1]) > 1e-13 * max(1.0, u):
            unicas.append(u)
    return unicas


def nontrivial_fixed_points(params: ModelParams) -> List[FixedPoint]:
    """
    Pontos fixos não triviais (0 a 3), ordenados por x* decrescente.

    Args:
        params: Parâmetros (b, g)

    Returns:
        Lista de FixedPoint com branch_index 1..3
    """
    raizes = phi_roots(params.b, params.g)
    quase = any(abs(u2 - u1) < TOL_QUASE_DEGENERADO for u1, u2 in zip(raizes, raizes[1:]))
    if quase:
        log(f"Raízes quase degeneradas para b={params.b}, g={params.g}: {raizes}", "AVISO")

    pontos = []
    for u in sorted(raizes, reverse=True):
        estado = State(u, math.exp(params.g * u))
        autovalores = characteristic_exponents(params, estado)
        pontos.append(FixedPoint(estado, autovalores, classify(autovalores), 0, quase))

    if len(pontos) == 3:
        indices = [1, 2, 3]
    elif len(pontos) == 2:
        indices = [2, 3]
    elif len(pontos) == 1:
        # ponto único: ramo 3 enquanto estável (região A), ramo 1 quando instável (C)
        indices = [3 if pontos[0].eigenvalues[1].real <= 0 else 1]
    else:
        indices = []
    return [FixedPoint(fp.location, fp.eigenvalues, fp.kind, i, fp.near_degenerate)
            for fp, i in zip(pontos, indices)]


# ---------------------------------------------------------------------------
# Linhas críticas

def fold_curve_point(u: float) -> Tuple[float, float]:
    """
    Parametrização fechada da curva de dobra (phi = phi' = 0):
    g(u) = (1/ln u - 1)/u,  b(u) = ln u exp(1 - 1/ln u)/u.

    Returns:
        (b, g)
    """
    if not math.isfinite(u) or u <= 0 or u == 1.0:
        raise ErroDominio(f"u deve ser positivo e diferente de 1 (recebido {u})")
    L = math.log(u)
    try:
        b = L * math.exp(1.0 - 1.0 / L) / u
    except OverflowError as e:
        raise ErroDominio(f"u = {u} próximo demais de 1") from e
    g = (1.0 / L - 1.0) / u
    return b, g


def fold_residuals(u: float) -> Tuple[float, float]:
    """(|phi|, |u phi'|) no ponto da curva de dobra parametrizado por u."""
    b, g = fold_curve_point(u)
    return abs(float(_phi(u, b, g))), abs(float(_u_dphi(u, b, g)))


def cusp_point() -> Cuspide:
    """Cúspide (phi = phi' = phi'' = 0): b0 ~ 0.4701, g ~ -0.0757, u ~ 5.043."""
    b0, g = fold_curve_point(U_CUSPIDE)
    return Cuspide(b0, g, U_CUSPIDE)


def cusp_residuals() -> Tuple[float, float, float]:
    b0, g, u = cusp_point()
    return (abs(float(_phi(u, b0, g))), abs(float(_u_dphi(u, b0, g))) / u,
            abs(_d2phi(u, b0, g)))


B0, G_CUSPIDE, _ = cusp_point()


def bogdanov_takens_point() -> Tuple[float, float]:
    """Encontro da linha de Hopf com o ramo g0 (x* = e^2): b = 2 e^{-3/2}, g = -1/(2 e^2)."""
    return fold_curve_point(math.e ** 2)


B_BT, G_BT = bogdanov_takens_point()


def ponto_critico_duplo() -> Tuple[float, float]:
    return INVERSO_E, 0.0


def hopf_line(b: float) -> float:
    """Traço nulo com x* = e^2: g_H(b) = (ln 2 - 2 - ln b)/e^2."""
    if not math.isfinite(b) or b <= 0:
        raise ErroDominio(f"Linha de Hopf definida para b > 0 (recebido {b})")
    return (math.log(2.0) - 2.0 - math.log(b)) / math.e ** 2


def _b_da_dobra(u: float) -> float:
    return fold_curve_point(u)[0]


def critical_g0(b: float) -> float:
    """Ramo g0 da dobra (u > u_cúspide), definido para 0 < b < b0."""
    if not math.isfinite(b) or not 0 < b < B0:
        raise ErroDominio(f"g0(b) definido para 0 < b < b0={B0:.6f} (recebido {b})")
    u_alto = 2.0 * U_CUSPIDE
    while _b_da_dobra(u_alto) > b:
        u_alto *= 2.0
    u = brentq(lambda v: _b_da_dobra(v) - b, U_CUSPIDE, u_alto, xtol=1e-13, rtol=4 * np.finfo(float).eps)
    return fold_curve_point(u)[1]


def critical_gc(b: float) -> float:
    """
    Linha g_c(b): ramo da dobra com u < u_cúspide para b < b0 (positiva para
    b < 1/e), linha de Hopf para b >= b0.
    """
    if not math.isfinite(b) or b <= 0:
        raise ErroDominio(f"g_c(b) definido para b > 0 (recebido {b})")
    if b >= B0:
        return hopf_line(b)

    def diferenca(v):
        return _b_da_dobra(v) - b

    u = brentq(diferenca, 1.0 + 1e-9, U_CUSPIDE, xtol=1e-14, rtol=4 * np.finfo(float).eps)
    return fold_curve_point(u)[1]


def critical_b_of_g(g: float) -> float:
    """b_c(g) = g_c^{-1}(g), por bissecção em b até 1e-10 (ou melhor)."""
    if not math.isfinite(g):
        raise ErroDominio(f"g não finito: {g}")
    b_alto = max(1.0, 2.0 * math.exp(math.log(2.0) - 2.0 - g * math.e ** 2))
    b_baixo = 1e-12
    funcao = lambda b: critical_gc(b) - g  # noqa: E731
    if funcao(b_baixo) * funcao(b_alto) > 0:
        raise ErroDominio(f"Sem b_c para g = {g}")
    return bisect(funcao, b_baixo, b_alto, xtol=1e-12, maxiter=200)


def node_focus_boundary(b: float) -> float:
    """
    g_n(b): discriminante nulo no ponto estável. Parametrização em s = g x* < 0:
    b(s) = -4 s e^{3s}, g(s) = s e^{4s}, com s em (-1/3, 0).
    """
    if not math.isfinite(b) or not 0 < b < B_NO_FOCO_MAX:
        raise ErroDominio(f"Fronteira nó-foco definida para 0 < b < {B_NO_FOCO_MAX:.4f} (recebido {b})")
    s = brentq(lambda v: -4.0 * v * math.exp(3.0 * v) - b, -1.0 / 3.0, -1e-300,
               xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return s * math.exp(4.0 * s)


def node_focus_b(g: float) -> float:
    """Forma inversa b_n(g), com s em (-1/4, 0) onde g(s) é monótona."""
    g_minimo = -0.25 * math.exp(-1.0)
    if not math.isfinite(g) or not g_minimo < g < 0:
        raise ErroDominio(f"b_n(g) definido para {g_minimo:.4f} < g < 0 (recebido {g})")
    s = brentq(lambda v: v * math.exp(4.0 * v) - g, -0.25, -1e-300,
               xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return -4.0 * s * math.exp(3.0 * s)


def critical_lines(amostras: int = 200, b_max: float = 2.0) -> CriticalLines:
    """
    Amostra as linhas do plano b-g: dobra (g_c abaixo da cúspide, g0 acima),
    Hopf a partir de Bogdanov-Takens, fronteira nó-foco e os pontos especiais.
    """
    if amostras < 2 or not b_max > B_BT:
        raise ErroDominio(f"Amostragem inválida: amostras={amostras}, b_max={b_max}")
    dobra = []
    for u in np.concatenate([np.linspace(1.05, U_CUSPIDE, amostras // 2, endpoint=False),
                             np.geomspace(U_CUSPIDE, 1e4, amostras // 2)]):
        b, g = fold_curve_point(float(u))
        dobra.append((float(u), b, g))
    hopf = [(float(b), hopf_line(float(b))) for b in np.linspace(B_BT, b_max, amostras)]
    no_foco = [(float(b), node_focus_boundary(float(b)))
               for b in np.linspace(1e-3, B_NO_FOCO_MAX * 0.999, amostras)]
    return CriticalLines(dobra, hopf, cusp_point(), no_foco, (B_BT, G_BT), ponto_critico_duplo())


# ---------------------------------------------------------------------------
# Regiões

def _rotulo_censo(pontos: List[FixedPoint]) -> Optional[RegionLabel]:
    n = len(pontos)
    if n == 0:
        return RegionLabel.E
    if n == 2:
        return RegionLabel.D
    if n == 3:
        return RegionLabel.B
    if pontos[0].kind == Kind.DEGENERATE and abs(pontos[0].eigenvalues[1].real) < TOL_DEGENERADO:
        return None
    return RegionLabel.A if pontos[0].kind.estavel else RegionLabel.C


def _rotulo_desigualdades(b: float, g: float) -> RegionLabel:
    gc = critical_gc(b)
    if b < B0:
        g0 = critical_g0(b)
        if g < g0:
            return RegionLabel.A
        if b < INVERSO_E:
            if g < 0:
                return RegionLabel.B
            return RegionLabel.D if g < gc else RegionLabel.E
        return RegionLabel.B if g < gc else (RegionLabel.C if g < 0 else RegionLabel.E)
    if g < gc:
        return RegionLabel.A
    return RegionLabel.C if g < 0 else RegionLabel.E


def _distancia_linhas(b: float, g: float) -> float:
    """Distância (em g) às curvas que separam regiões; b = 1/e só conta junto ao ponto duplo."""
    distancias = [abs(g), math.hypot(b - INVERSO_E, g), abs(g - critical_gc(b))]
    if b < B0:
        distancias.append(abs(g - critical_g0(b)))
        if b > B_BT:
            # entre Bogdanov-Takens e a cúspide a estabilidade muda sobre a linha de Hopf
            distancias.append(abs(g - hopf_line(b)))
    return min(distancias)


def region_label(params: ModelParams) -> RegionResult:
    """
    Rótulo A-E pelo censo de pontos fixos, conferido pelas desigualdades.

    Perto (1e-6) de uma linha crítica devolve label=None com boundary=True e
    as regiões vizinhas. Fora disso, se os dois métodos discordarem, vale o
    censo (caso da faixa entre a dobra g_c e a linha de Hopf junto à cúspide).
    """
    b, g = params.b, params.g
    if b <= 0:
        raise ErroPrecondicao(f"region_label exige b > 0 (recebido {b})")

    pontos = nontrivial_fixed_points(params)
    censo = _rotulo_censo(pontos)
    desigualdade = _rotulo_desigualdades(b, g)

    quase = any(fp.near_degenerate for fp in pontos)
    if censo is None or quase or _distancia_linhas(b, g) < TOL_FRONTEIRA:
        vizinhas = set()
        for db, dg in ((0, 2e-6), (0, -2e-6), (2e-6, 0), (-2e-6, 0)):
            if b + db > 0:
                vizinhas.add(_rotulo_desigualdades(b + db, g + dg))
        return RegionResult(None, True, tuple(sorted(vizinhas, key=lambda r: r.value)), censo, desigualdade)

    if censo != desigualdade:
        log(f"Censo ({censo.value}) e desigualdades ({desigualdade.value}) discordam em "
            f"b={b}, g={g}; usando o censo", "AVISO")
    return RegionResult(censo, False, (), censo, desigualdade)


def rotular_ponto(b: float, g: float) -> Dict:
    """Linha b,g,region do mapa de regiões ('boundary' sobre as linhas críticas)."""
    resultado = region_label(ModelParams(b, g))
    rotulo = resultado.label.value if resultado.label is not None else 'boundary'
    return {'b': b, 'g': g, 'region': rotulo}


# ---------------------------------------------------------------------------
# Varredura de bifurcação

def _assinatura(pontos: List[FixedPoint]) -> Tuple[int, Optional[bool], Optional[bool]]:
    """(número de pontos, ponto único estável?, ponto estável é nó?)"""
    n = len(pontos)
    estavel_unico = None
    if n == 1:
        estavel_unico = pontos[0].eigenvalues[1].real < 0
    estaveis = [fp for fp in pontos if fp.branch_index == 3 and fp.eigenvalues[1].real < 0]
    no = None
    if estaveis:
        no = abs(estaveis[0].eigenvalues[0].imag) == 0.0
    return n, estavel_unico, no


def _nome(parametro: str, tipo: str, aumenta: bool, valor: float) -> str:
    if parametro == 'g':
        if tipo == 'no_foco':
            return 'g_n'
        if tipo == 'contagem' and aumenta:
            return 'g_0'
        if tipo == 'contagem' and abs(valor) < 1e-4:
            return 'g=0'
        return 'g_c'
    if tipo == 'no_foco':
        return 'b_n'
    if tipo == 'contagem' and aumenta:
        return 'b_1'
    return 'b_2'


def bifurcation_scan(fixed: Tuple[str, float], varying: Sequence[float]) -> BifurcationBranch:
    """
    Pontos fixos classificados ao longo de uma grade e pontos de coincidência.

    Args:
        fixed: ('b', valor) ou ('g', valor)
        varying: grade monótona do outro parâmetro (>= 2 pontos)

    Returns:
        BifurcationBranch com anotações g_0, g_c, g_n, g=0 ou b_1, b_2, b_n
    """
    nome_fixo, valor_fixo = fixed
    if nome_fixo not in ('b', 'g'):
        raise ErroDominio(f"Parâmetro fixo deve ser 'b' ou 'g' (recebido {nome_fixo})")
    grade = np.asarray(varying, dtype=float)
    diferencas = np.diff(grade)
    if len(grade) < 2 or not (np.all(diferencas > 0) or np.all(diferencas < 0)):
        raise ErroDominio("A grade deve ser monótona com pelo menos 2 pontos")
    variavel = 'g' if nome_fixo == 'b' else 'b'

    def parametros(valor: float) -> ModelParams:
        if nome_fixo == 'b':
            return ModelParams(valor_fixo, float(valor))
        return ModelParams(float(valor), valor_fixo)

    def assinatura(valor: float):
        return _assinatura(nontrivial_fixed_points(parametros(valor)))

    pontos = [nontrivial_fixed_points(parametros(v)) for v in grade]
    assinaturas = [_assinatura(p) for p in pontos]

    anotacoes = []
    for i in range(len(grade) - 1):
        a, c = float(grade[i]), float(grade[i + 1])
        sa, sc = assinaturas[i], assinaturas[i + 1]
        for componente, tipo in ((0, 'contagem'), (1, 'hopf'), (2, 'no_foco')):
            if sa[componente] == sc[componente]:
                continue
            if tipo != 'contagem' and (sa[componente] is None or sc[componente] is None):
                continue
            referencia = sa[componente]
            funcao = lambda v: 1.0 if assinatura(v)[componente] == referencia else -1.0  # noqa: E731
            valor = bisect(funcao, a, c, xtol=TOL_BISSECCAO, maxiter=200)
            if tipo == 'contagem':
                aumenta = (sc[0] - sa[0]) * (c - a) > 0
            else:
                aumenta = False
            anotacoes.append(Anotacao(_nome(variavel, tipo, aumenta, valor), valor, tipo))

    anotacoes.sort(key=lambda an: an.valor)
    return BifurcationBranch(variavel, nome_fixo, valor_fixo, grade, pontos, anotacoes)


def main():
    """Função principal para teste do módulo."""
    print("=== EQUILÍBRIOS - TESTE ===")
    cuspide = cusp_point()
    print(f"Cúspide: b0={cuspide.b0:.6f} g={cuspide.g:.6f} u={cuspide.u:.4f}")
    for b in (0.2, 0.4, 0.5, 1.0):
        print(f"g_c({b}) = {critical_gc(b):.6f}")
    for fp in nontrivial_fixed_points(ModelParams(0.4006, -0.03)):
        print(f"  x*={fp.location.x:.4f} z*={fp.location.z:.4f} {fp.kind.value} λ={fp.eigenvalues}")
    print(f"Região (1, -0.05): {region_label(ModelParams(1.0, -0.05)).label}")


if __name__ == "__main__":
    main()
