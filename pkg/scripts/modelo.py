#!/usr/bin/env python3
"""
Módulo do Modelo Dinâmico - Simulador de Bolhas Periódicas
Define os parâmetros, o estado (preço do ativo x, preço do título z), o campo
vetorial acoplado, o Jacobiano e o seu traço.

    dx/dt = x - x^2 exp(-b x z)
    dz/dt = z - z^2 exp(-g x)

Todas as funções são puras: dependem apenas de (parâmetros, estado).
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

# Política de overflow
LIMITE_EXPOENTE = 700.0
LIMITE_DIVERGENCIA = 1e300


class ErroSimulacao(Exception):
    """Erro base do simulador."""


class ErroDominio(ErroSimulacao, ValueError):
    """Entrada fora do domínio (não finita, negativa, etc.)."""


class ErroPrecondicao(ErroDominio):
    """Pré-condição de uma operação violada."""


class ErroConfiguracao(ErroSimulacao, ValueError):
    """Configuração de execução inválida (tolerâncias, chaves desconhecidas, etc.)."""


class DivergenciaDetectada(ErroSimulacao):
    """x ou z ultrapassou o limite de divergência; guarda o último estado finito."""

    def __init__(self, ultimo_estado: Tuple[float, float], mensagem: str = ""):
        self.ultimo_estado = ultimo_estado
        super().__init__(mensagem or f"Divergência detectada em (x, z) = {ultimo_estado}")


@dataclass(frozen=True)
class ModelParams:
    """Par de controle (b, g): taxa log-preço fundamental e taxa log-desconto."""
    b: float
    g: float

    def __post_init__(self):
        if not (math.isfinite(self.b) and math.isfinite(self.g)):
            raise ErroDominio(f"Parâmetros não finitos: b={self.b}, g={self.g}")


@dataclass(frozen=True)
class State:
    """Preço do ativo x e preço do título z, ambos finitos e não negativos."""
    x: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.z)):
            raise ErroDominio(f"Estado não finito: x={self.x}, z={self.z}")
        if self.x < 0 or self.z < 0:
            raise ErroDominio(f"Preços negativos: x={self.x}, z={self.z}")


@dataclass(frozen=True)
class JacobianMatrix:
    j11: float
    j12: float
    j21: float
    j22: float

    def como_array(self) -> np.ndarray:
        return np.array([[self.j11, self.j12], [self.j21, self.j22]])

    def autovalores(self) -> Tuple[complex, complex]:
        """Autovalores por autodecomposição direta (numpy)."""
        w = np.linalg.eigvals(self.como_array())
        w = sorted((complex(v) for v in w), key=lambda v: (v.real, v.imag))
        return w[0], w[1]

    @property
    def traco(self) -> float:
        return self.j11 + self.j22


def exp_limitado(argumento: float) -> float:
    """exp() com o argumento restrito a [-700, 700]."""
    return math.exp(min(max(argumento, -LIMITE_EXPOENTE), LIMITE_EXPOENTE))


def verificar_divergencia(x: float, z: float, limite: float = LIMITE_DIVERGENCIA):
    if x > limite or z > limite:
        raise DivergenciaDetectada((x, z))


def derivadas(b: float, g: float, x: float, z: float) -> Tuple[float, float]:
    """
    Campo vetorial em floats puros, sem validação (usado no laço do integrador).

    Returns:
        (dx/dt, dz/dt)
    """
    ex = exp_limitado(-b * x * z)
    ez = exp_limitado(-g * x)
    # x * (x * e) evita x^2 intermediário
    f1 = x - x * (x * ex)
    f2 = z - z * (z * ez)
    return f1, f2


def traco_bruto(b: float, g: float, x: float, z: float) -> float:
    """Traço do Jacobiano em floats puros (integrando do expoente de expansão)."""
    ex = exp_limitado(-b * x * z)
    ez = exp_limitado(-g * x)
    return 2.0 - (2.0 * x - b * x * x * z) * ex - 2.0 * z * ez


def _validar(params: ModelParams, s: State):
    if not isinstance(params, ModelParams) or not isinstance(s, State):
        raise ErroDominio("Esperado (ModelParams, State)")
    verificar_divergencia(s.x, s.z)


def vector_field(params: ModelParams, s: State) -> Tuple[float, float]:
    """
    Avalia o campo vetorial no estado s.

    Args:
        params: Parâmetros (b, g)
        s: Estado (x, z)

    Returns:
        Tupla (dx/dt, dz/dt)
    """
    _validar(params, s)
    f1, f2 = derivadas(params.b, params.g, s.x, s.z)
    if not (math.isfinite(f1) and math.isfinite(f2)):
        raise DivergenciaDetectada((s.x, s.z))
    return f1, f2


def jacobian(params: ModelParams, s: State) -> JacobianMatrix:
    """
    Jacobiano analítico do campo vetorial.

    Args:
        params: Parâmetros (b, g)
        s: Estado (x, z)

    Returns:
        JacobianMatrix com as derivadas parciais de f1 e f2
    """
    _validar(params, s)
    b, g, x, z = params.b, params.g, s.x, s.z
    ex = exp_limitado(-b * x * z)
    ez = exp_limitado(-g * x)
    j = JacobianMatrix(
        j11=1.0 - (2.0 * x - b * x * x * z) * ex,
        j12=b * x ** 3 * ex,
        j21=g * z * z * ez,
        j22=1.0 - 2.0 * z * ez,
    )
    if not all(math.isfinite(v) for v in (j.j11, j.j12, j.j21, j.j22)):
        raise DivergenciaDetectada((x, z))
    return j


def jacobian_trace(params: ModelParams, s: State) -> float:
    """Tr J(x, z); num ponto fixo não trivial vale b x z - 2."""
    return jacobian(params, s).traco


def main():
    """Função principal para teste rápido do módulo."""
    params = ModelParams(b=0.4006, g=-0.03)
    for estado in (State(2.928, 0.916), State(3.08, 0.912), State(58.26, 0.174)):
        j = jacobian(params, estado)
        print(f"({estado.x}, {estado.z}) → campo={vector_field(params, estado)} "
              f"traço={j.traco:.4f} autovalores={j.autovalores()}")


if __name__ == "__main__":
    main()
