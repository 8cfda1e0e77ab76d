#!/usr/bin/env python3
"""
Módulo Integrador - Simulador de Bolhas Periódicas
Integra o sistema acoplado com Runge-Kutta embutido de Dormand-Prince
(scipy.integrate.solve_ivp, saída densa), opcionalmente aumentado pelo
acumulador do expoente de expansão s' = Tr J(x, z), e refina os tempos dos
extremos de x, z e Λ = s/t.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from modelo import (LIMITE_DIVERGENCIA, LIMITE_EXPOENTE, ErroConfiguracao,
                    ErroSimulacao, ModelParams, State, derivadas, traco_bruto)
from registro import log

METODOS_PERMITIDOS = ('DOP853', 'RK45')
TIPOS_EVENTO = ('x_max', 'x_min', 'z_min', 'z_max', 'lambda_max')

TOL_TEMPO_EVENTO = 1e-10
# extremos com variação relativa menor que isso são ruído de integração
TOL_AMPLITUDE_EVENTO = 1e-8


@dataclass(frozen=True)
class IntegrationConfig:
    t_end: float
    x0: float
    z0: float
    rtol: float = 1e-10
    atol: float = 1e-12
    max_step: float = math.inf
    dt: float = 0.01
    limite_divergencia: float = LIMITE_DIVERGENCIA
    metodo: str = 'DOP853'

    def __post_init__(self):
        for nome in ('t_end', 'x0', 'z0', 'rtol', 'atol', 'dt', 'limite_divergencia'):
            valor = getattr(self, nome)
            if not isinstance(valor, (int, float)) or not math.isfinite(valor):
                raise ErroConfiguracao(f"{nome} deve ser um número finito (recebido {valor!r})")
        if self.t_end <= 0:
            raise ErroConfiguracao(f"t_end deve ser positivo (recebido {self.t_end})")
        if self.rtol <= 0 or self.atol <= 0:
            raise ErroConfiguracao(f"Tolerâncias devem ser positivas (rtol={self.rtol}, atol={self.atol})")
        if self.dt <= 0 or self.dt > self.t_end:
            raise ErroConfiguracao(f"dt deve estar em (0, t_end] (recebido {self.dt})")
        if not self.max_step > 0:
            raise ErroConfiguracao(f"max_step deve ser positivo (recebido {self.max_step})")
        if self.metodo not in METODOS_PERMITIDOS:
            raise ErroConfiguracao(f"Método {self.metodo!r} não suportado; use {METODOS_PERMITIDOS}")

    def como_dict(self) -> Dict:
        return {
            't_end': self.t_end, 'x0': self.x0, 'z0': self.z0, 'rtol': self.rtol,
            'atol': self.atol, 'max_step': None if math.isinf(self.max_step) else self.max_step,
            'dt': self.dt, 'limite_divergencia': self.limite_divergencia, 'metodo': self.metodo,
        }


@dataclass(frozen=True)
class Evento:
    kind: str
    t: float
    valor: float


@dataclass
class ExpansionSeries:
    """Λ(t) = s(t)/t nas amostras com t > 0 e seus extremos locais."""
    tempos: np.ndarray
    valores: np.ndarray
    maximos: List[Evento] = field(default_factory=list)
    minimos: List[Evento] = field(default_factory=list)
    minimos_por_pico: List[Optional[Evento]] = field(default_factory=list)

    @property
    def maximo_global(self) -> Optional[Evento]:
        if not self.maximos:
            return None
        return max(self.maximos, key=lambda e: e.valor)

    def maximo_antes(self, t: float) -> Optional[Evento]:
        """Último máximo local de Λ antes de t (o t_Λ de um pico em t)."""
        anteriores = [e for e in self.maximos if e.t < t]
        return anteriores[-1] if anteriores else None

    def minimo_proximo(self, t: float) -> Optional[Evento]:
        if not self.minimos:
            return None
        return min(self.minimos, key=lambda e: abs(e.t - t))


@dataclass
class Trajectory:
    params: ModelParams
    config: IntegrationConfig
    amostras: pd.DataFrame
    eventos: List[Evento]
    status: str
    t_final: float
    solucao: object = None
    expansao: Optional[ExpansionSeries] = None
    ultimo_estado: Optional[Tuple[float, float]] = None

    @property
    def concluida(self) -> bool:
        return self.status == 'completed'

    @property
    def t(self) -> np.ndarray:
        return self.amostras['t'].to_numpy()

    @property
    def x(self) -> np.ndarray:
        return self.amostras['x'].to_numpy()

    @property
    def z(self) -> np.ndarray:
        return self.amostras['z'].to_numpy()

    def eventos_do_tipo(self, kind: str) -> List[Evento]:
        return [e for e in self.eventos if e.kind == kind]

    def estado_em(self, t) -> np.ndarray:
        """(x, z) pela saída densa; aceita escalar ou vetor de tempos."""
        return self.solucao(t)[:2]

    def lambda_em(self, t: float) -> float:
        if self.expansao is None:
            raise ErroSimulacao("Trajetória integrada sem o expoente de expansão")
        if t <= 0:
            return math.nan
        return float(self.solucao(t)[2]) / t


# ---------------------------------------------------------------------------

def _derivadas_vetor(b: float, g: float, x: np.ndarray, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    ex = np.exp(np.clip(-b * x * z, -LIMITE_EXPOENTE, LIMITE_EXPOENTE))
    ez = np.exp(np.clip(-g * x, -LIMITE_EXPOENTE, LIMITE_EXPOENTE))
    return x - x * (x * ex), z - z * (z * ez)


def _traco_vetor(b: float, g: float, x: np.ndarray, z: np.ndarray) -> np.ndarray:
    ex = np.exp(np.clip(-b * x * z, -LIMITE_EXPOENTE, LIMITE_EXPOENTE))
    ez = np.exp(np.clip(-g * x, -LIMITE_EXPOENTE, LIMITE_EXPOENTE))
    return 2.0 - (2.0 * x - b * x * x * z) * ex - 2.0 * z * ez


def _funcao_indicadora(trajetoria: Trajectory, variavel: str):
    """Derivada analítica de x, z ou Λ (a menos de 1/t^2) avaliada na saída densa."""
    b, g = trajetoria.params.b, trajetoria.params.g
    sol = trajetoria.solucao

    if variavel == 'x':
        def funcao(t):
            y = sol(t)
            return _derivadas_vetor(b, g, y[0], y[1])[0]
    elif variavel == 'z':
        def funcao(t):
            y = sol(t)
            return _derivadas_vetor(b, g, y[0], y[1])[1]
    else:
        # dΛ/dt = (Tr J * t - s) / t^2
        def funcao(t):
            y = sol(t)
            return _traco_vetor(b, g, y[0], y[1]) * t - y[2]
    return funcao


def _valor(trajetoria: Trajectory, variavel: str, t: float) -> float:
    y = trajetoria.solucao(t)
    if variavel == 'x':
        return float(y[0])
    if variavel == 'z':
        return float(y[1])
    return float(y[2]) / t


def _extremos(trajetoria: Trajectory, variavel: str, inicio: float, fim: float) -> List[Evento]:
    """Máximos e mínimos de uma variável, em ordem de tempo, já sem os de ruído."""
    if fim <= inicio or trajetoria.solucao is None:
        return []
    if variavel == 'lambda' and len(trajetoria.solucao(0.0)) < 3:
        raise ErroSimulacao("Eventos de Λ exigem integrate_with_expansion")

    passos = np.asarray(trajetoria.solucao.ts)
    grade = trajetoria.t
    tempos = np.unique(np.concatenate([passos, grade, [inicio, fim]]))
    tempos = tempos[(tempos >= inicio) & (tempos <= fim)]
    if variavel == 'lambda':
        tempos = tempos[tempos > 0]
    if len(tempos) < 2:
        return []

    funcao = _funcao_indicadora(trajetoria, variavel)
    sinais = np.sign(funcao(tempos))
    validos = sinais != 0
    tempos, sinais = tempos[validos], sinais[validos]
    if len(tempos) < 2:
        return []

    nomes = {'x': ('x_max', 'x_min'), 'z': ('z_max', 'z_min'), 'lambda': ('lambda_max', 'lambda_min')}[variavel]
    brutos = []
    for i in np.nonzero(sinais[:-1] != sinais[1:])[0]:
        t_evento = brentq(lambda t: float(funcao(t)), tempos[i], tempos[i + 1],
                          xtol=TOL_TEMPO_EVENTO, rtol=4 * np.finfo(float).eps)
        tipo = nomes[0] if sinais[i] > 0 else nomes[1]
        brutos.append(Evento(tipo, float(t_evento), _valor(trajetoria, variavel, t_evento)))

    referencia = _valor(trajetoria, variavel, float(tempos[0]))
    filtrados = []
    for evento in brutos:
        if abs(evento.valor - referencia) > TOL_AMPLITUDE_EVENTO * max(1.0, abs(evento.valor)):
            filtrados.append(evento)
            referencia = evento.valor
    return filtrados


def locate_extrema(trajectory: Trajectory, kind: str,
                   janela: Optional[Tuple[float, float]] = None) -> List[Evento]:
    """
    Extremos refinados de um tipo: mudança de sinal da derivada analítica na
    saída densa, refinada por brentq até 1e-10 em t.

    Args:
        trajectory: Trajetória com saída densa
        kind: x_max, x_min, z_min, z_max ou lambda_max
        janela: (início, fim) opcional; padrão é todo o intervalo integrado

    Returns:
        Lista de Evento ordenada por tempo (vazia para janela vazia)
    """
    if kind not in TIPOS_EVENTO + ('lambda_min',):
        raise ErroConfiguracao(f"Tipo de evento desconhecido: {kind}")
    inicio, fim = janela if janela is not None else (0.0, trajectory.t_final)
    fim = min(fim, trajectory.t_final)
    variavel = kind.split('_')[0]
    return [e for e in _extremos(trajectory, variavel, max(inicio, 0.0), fim) if e.kind == kind]


def _integrar(params: ModelParams, config: IntegrationConfig, com_expansao: bool) -> Trajectory:
    State(config.x0, config.z0)
    b, g = params.b, params.g
    limite = config.limite_divergencia

    if com_expansao:
        def campo(t, y):
            f1, f2 = derivadas(b, g, y[0], y[1])
            return (f1, f2, traco_bruto(b, g, y[0], y[1]))
        y0 = [config.x0, config.z0, 0.0]
    else:
        def campo(t, y):
            return derivadas(b, g, y[0], y[1])
        y0 = [config.x0, config.z0]

    def divergencia(t, y):
        return max(y[0], y[1]) - limite
    divergencia.terminal = True
    divergencia.direction = 1

    with np.errstate(over='ignore', invalid='ignore'):
        sol = solve_ivp(campo, (0.0, config.t_end), y0, method=config.metodo, rtol=config.rtol,
                        atol=config.atol, max_step=config.max_step, dense_output=True,
                        events=[divergencia])

    ultimo = (float(sol.y[0, -1]), float(sol.y[1, -1]))
    if sol.status == 1:
        status = 'diverged'
        log(f"Divergência em t={sol.t[-1]:.4f} para b={b}, g={g}: (x, z) = {ultimo}", "AVISO")
    elif sol.status == 0:
        status = 'completed'
    elif max(ultimo) > math.sqrt(limite) or not all(map(math.isfinite, ultimo)):
        status = 'diverged'
        log(f"Integração interrompida com estado explosivo em t={sol.t[-1]:.4f}: {sol.message}", "AVISO")
    else:
        raise ErroSimulacao(f"Falha na integração (b={b}, g={g}): {sol.message}")

    t_final = float(sol.t[-1])
    n = max(1, int(round(t_final / config.dt)))
    grade = np.linspace(0.0, n * config.dt, n + 1)
    grade = grade[grade <= t_final]
    if grade[-1] < t_final:
        grade = np.append(grade, t_final)

    trajetoria = Trajectory(params, config, pd.DataFrame({'t': grade}), [], status, t_final,
                            sol.sol, ultimo_estado=ultimo)
    variaveis = ('x', 'z', 'lambda') if com_expansao else ('x', 'z')
    eventos: List[Evento] = []
    extremos_lambda: List[Evento] = []
    for variavel in variaveis:
        encontrados = _extremos(trajetoria, variavel, 0.0, t_final)
        if variavel == 'lambda':
            extremos_lambda = encontrados
            encontrados = [e for e in encontrados if e.kind == 'lambda_max']
        eventos.extend(encontrados)
    eventos.sort(key=lambda e: (e.t, e.kind))

    tempos = np.unique(np.concatenate([grade, [e.t for e in eventos]]))
    y = sol.sol(tempos)
    # a interpolação densa pode passar levemente abaixo de zero perto de x = 0 ou z = 0
    dados = {'t': tempos, 'x': np.maximum(y[0], 0.0), 'z': np.maximum(y[1], 0.0)}

    expansao = None
    if com_expansao:
        with np.errstate(divide='ignore', invalid='ignore'):
            lambdas = np.where(tempos > 0, y[2] / np.where(tempos > 0, tempos, 1.0), np.nan)
        dados['lambda'] = lambdas
        positivos = tempos > 0
        maximos = [e for e in extremos_lambda if e.kind == 'lambda_max']
        minimos = [e for e in extremos_lambda if e.kind == 'lambda_min']
        expansao = ExpansionSeries(tempos[positivos], lambdas[positivos], maximos, minimos)
        picos = [e for e in eventos if e.kind == 'x_max']
        expansao.minimos_por_pico = [expansao.minimo_proximo(p.t) for p in picos]

    trajetoria.amostras = pd.DataFrame(dados)
    trajetoria.eventos = eventos
    trajetoria.expansao = expansao
    return trajetoria


def integrate(params: ModelParams, config: IntegrationConfig) -> Trajectory:
    """
    Integra o sistema de t = 0 a t_end.

    Args:
        params: Parâmetros (b, g)
        config: Configuração da integração

    Returns:
        Trajectory com amostras na grade uniforme mais os tempos de evento;
        status 'diverged' quando x ou z passa do limite
    """
    return _integrar(params, config, com_expansao=False)


def integrate_with_expansion(params: ModelParams, config: IntegrationConfig) -> Trajectory:
    """Como integrate, acumulando s = ∫ Tr J dt; amostras ganham a coluna lambda."""
    return _integrar(params, config, com_expansao=True)


def main():
    """Função principal para teste do módulo."""
    print("=== INTEGRADOR - TESTE ===")
    params = ModelParams(0.4, -0.029)
    traj = integrate_with_expansion(params, IntegrationConfig(t_end=130.0, x0=1.0, z0=0.1))
    pico = traj.eventos_do_tipo('x_max')[0]
    t_lambda = traj.expansao.maximo_antes(pico.t)
    print(f"Status: {traj.status} | primeiro máximo x={pico.valor:.3f} em t={pico.t:.3f}")
    print(f"Λ(t_max)={traj.lambda_em(pico.t):.4f} | máximo de Λ={t_lambda.valor:.4f} em t={t_lambda.t:.3f}")


if __name__ == "__main__":
    main()
