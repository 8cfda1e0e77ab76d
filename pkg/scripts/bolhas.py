#!/usr/bin/env python3
"""
Módulo de Bolhas - Simulador de Bolhas Periódicas
Detecção das bolhas de preço na região C, métricas (amplitude, meia-largura,
período, atraso ativo-título, razão R, assimetria, patamar), ajuste do
aproximante super-exponencial e estimativa dos expoentes críticos ν e γ.
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy.optimize import brentq
from scipy.stats import linregress

from equilibrios import critical_b_of_g
from integrador import (IntegrationConfig, Trajectory, integrate,
                        integrate_with_expansion)
from modelo import ErroDominio, ErroPrecondicao, ErroSimulacao, ModelParams
from registro import log
from varredura import mapear

ALFA = 0.4
BETA = 0.2

TOL_PERIODO_TRANSIENTE = 0.01
CICLOS_ASSINTOTICOS = 3
CICLOS_MINIMOS = 20

# margem antes de t_Λ: o aproximante é singular em t_Λ
MARGEM_FIM_AJUSTE = 0.5
# a janela padrão começa quando x passa de FATOR_PATAMAR vezes o patamar pré-bolha
FATOR_PATAMAR = 2.0
FRACAO_JANELA_PADRAO = 0.05
PONTOS_MINIMOS_AJUSTE = 3

# queda relativa da amplitude que caracteriza oscilação amortecida (transiente junto a Hopf)
QUEDA_AMORTECIMENTO = 0.1
PONTOS_CAUDA = 3

PoliticaTransiente = Union[str, float, None]


@dataclass
class BubbleEvent:
    index: int
    t_peak: float
    amplitude: float
    width: float = math.nan
    t_zmin: float = math.nan
    period_prev: float = math.nan
    t_meia_subida: float = math.nan
    t_meia_descida: float = math.nan
    plateau: float = math.nan

    @property
    def lag(self) -> float:
        return self.t_zmin - self.t_peak

    @property
    def relative_lag(self) -> float:
        return self.lag / self.width

    @property
    def rise(self) -> float:
        return self.t_peak - self.t_meia_subida

    @property
    def fall(self) -> float:
        return self.t_meia_descida - self.t_peak

    @property
    def asymmetry(self) -> float:
        """Tempo de subida / tempo de queda (> 1: sobe devagar, cai rápido)."""
        return self.rise / self.fall

    def como_dict(self) -> Dict:
        dados = asdict(self)
        dados.update(lag=self.lag, relative_lag=self.relative_lag, rise=self.rise,
                     fall=self.fall, asymmetry=self.asymmetry)
        return dados


@dataclass
class BubbleStats:
    periods: List[float]
    count: int
    janela: Optional[Tuple[float, float]]
    mean_amplitude: float
    mean_width: float
    ratio_r: float
    plateau: float = math.nan
    mean_asymmetry: float = math.nan
    asymptotic_period: float = math.nan
    asymptotic_amplitude: float = math.nan

    def como_dict(self) -> Dict:
        return asdict(self)


@dataclass
class SuperExpFit:
    c1: float
    c2: float
    t_lambda: float
    janela: Tuple[float, float]
    rms_log_residual: float
    alpha: float = ALFA
    beta: float = BETA
    t_peak: float = math.nan
    n_pontos: int = 0

    def avaliar(self, t) -> np.ndarray:
        """x_app(t) = c1 (t_Λ - t)^(-β) exp[c2 (t_Λ - t)^(-α)]."""
        tau = self.t_lambda - np.asarray(t, dtype=float)
        return self.c1 * tau ** (-self.beta) * np.exp(self.c2 * tau ** (-self.alpha))

    def como_dict(self) -> Dict:
        dados = asdict(self)
        dados['janela'] = list(self.janela)
        return dados


@dataclass
class ExponentEstimate:
    nome: str
    valor: float
    erro_padrao: float
    n_pontos: int
    grade: List[float]
    tabela: pd.DataFrame = field(repr=False, default=None)
    excluidos: List[Dict] = field(default_factory=list)
    # inclinação só nas décadas mais próximas da linha crítica
    valor_cauda: float = math.nan
    erro_cauda: float = math.nan

    def como_dict(self) -> Dict:
        return {
            'nome': self.nome,
            'valor': self.valor,
            'erro_padrao': self.erro_padrao,
            'n_pontos': self.n_pontos,
            'grade': list(self.grade),
            'excluidos': self.excluidos,
            'valor_cauda': self.valor_cauda,
            'erro_cauda': self.erro_cauda,
        }


@dataclass
class MedicaoCiclo:
    """Resultado de uma integração longa até o ciclo limite (um ponto de varredura)."""
    b: float
    g: float
    x0: float
    z0: float
    periodo: float = math.nan
    amplitude: float = math.nan
    plateau: float = math.nan
    largura: float = math.nan
    n_picos: int = 0
    t_end: float = math.nan
    status: str = 'ok'
    nota: str = ''

    @property
    def valido(self) -> bool:
        return self.status == 'ok'


# ---------------------------------------------------------------------------
# Detecção

def _cruzamento(traj: Trajectory, nivel: float, t_a: float, t_b: float) -> float:
    return brentq(lambda t: float(traj.estado_em(t)[0]) - nivel, t_a, t_b,
                  xtol=1e-10, rtol=4 * np.finfo(float).eps)


def _meia_altura(traj: Trajectory, t_pico: float, nivel: float,
                 limite_esq: float, limite_dir: float) -> Tuple[float, float]:
    """Cruzamentos de x = nível à esquerda e à direita do pico (NaN se ausentes)."""
    t, x = traj.t, traj.x

    esquerda = math.nan
    mascara = (t >= limite_esq) & (t <= t_pico)
    te, xe = t[mascara], x[mascara]
    abaixo = np.nonzero(xe < nivel)[0]
    if len(abaixo) and abaixo[-1] + 1 < len(te):
        i = abaixo[-1]
        esquerda = _cruzamento(traj, nivel, te[i], te[i + 1])

    direita = math.nan
    mascara = (t >= t_pico) & (t <= limite_dir)
    td, xd = t[mascara], x[mascara]
    abaixo = np.nonzero(xd < nivel)[0]
    if len(abaixo) and abaixo[0] > 0:
        i = abaixo[0]
        direita = _cruzamento(traj, nivel, td[i - 1], td[i])
    return esquerda, direita


def _inicio_regime(tempos_pico: Sequence[float], politica: PoliticaTransiente) -> Optional[float]:
    """Tempo a partir do qual os picos contam (None: nenhum ciclo estabilizado)."""
    if politica is None or politica == 'nenhum':
        return -math.inf
    if isinstance(politica, (int, float)):
        return float(politica)
    if politica != 'auto':
        raise ErroDominio(f"Política de transiente desconhecida: {politica!r}")
    periodos = np.diff(tempos_pico)
    for i in range(len(periodos) - 1):
        if abs(periodos[i + 1] - periodos[i]) <= TOL_PERIODO_TRANSIENTE * periodos[i]:
            return float(tempos_pico[i])
    return None


def detect_bubbles(traj: Trajectory, transient_policy: PoliticaTransiente = 'auto') -> List[BubbleEvent]:
    """
    Detecta as bolhas: cada máximo de x pareado ao mínimo de z seguinte.

    Args:
        traj: Trajetória integrada (saída densa)
        transient_policy: 'auto' (descarta até dois períodos sucessivos
            concordarem em 1%), um tempo de corte absoluto, ou 'nenhum'

    Returns:
        Lista de BubbleEvent (vazia quando nenhum ciclo limite é alcançado)
    """
    picos = traj.eventos_do_tipo('x_max')
    minimos_z = traj.eventos_do_tipo('z_min')
    tempos = [p.t for p in picos]

    inicio = _inicio_regime(tempos, transient_policy)
    if inicio is None:
        log(f"Ciclo limite não alcançado (b={traj.params.b}, g={traj.params.g}, "
            f"{len(picos)} picos até t={traj.t_final:.1f})", "AVISO")
        return []

    eventos: List[BubbleEvent] = []
    for k, pico in enumerate(picos):
        limite_esq = picos[k - 1].t if k > 0 else 0.0
        limite_dir = picos[k + 1].t if k + 1 < len(picos) else traj.t_final
        subida, descida = _meia_altura(traj, pico.t, pico.valor / 2.0, limite_esq, limite_dir)

        seguintes = [m.t for m in minimos_z if pico.t < m.t < limite_dir]
        if not seguintes and k + 1 == len(picos):
            seguintes = [m.t for m in minimos_z if m.t > pico.t]
        evento = BubbleEvent(
            index=k,
            t_peak=pico.t,
            amplitude=pico.valor,
            width=descida - subida,
            t_zmin=seguintes[0] if seguintes else math.nan,
            period_prev=pico.t - picos[k - 1].t if k > 0 else math.nan,
            t_meia_subida=subida,
            t_meia_descida=descida,
        )
        if eventos and math.isfinite(eventos[-1].t_meia_descida) and math.isfinite(subida):
            mascara = (traj.t > eventos[-1].t_meia_descida) & (traj.t < subida)
            if mascara.any():
                evento.plateau = float(np.median(traj.x[mascara]))
        eventos.append(evento)

    mantidos = [e for e in eventos if e.t_peak >= inicio]
    for novo_indice, evento in enumerate(mantidos):
        evento.index = novo_indice
    if not mantidos:
        log(f"Nenhum pico após o transiente (corte em t={inicio})", "AVISO")
    sem_largura = [e.t_peak for e in mantidos if not math.isfinite(e.width)]
    if sem_largura:
        log(f"{len(sem_largura)} pico(s) sem os dois cruzamentos de A/2, largura indefinida "
            f"(primeiro em t={sem_largura[0]:.3f})", "AVISO")
    return mantidos


def _media(valores) -> float:
    finitos = [v for v in valores if math.isfinite(v)]
    return float(np.mean(finitos)) if finitos else math.nan


def bubble_stats(events: Sequence[BubbleEvent], window: Optional[Tuple[float, float]] = None) -> BubbleStats:
    """
    Estatísticas das bolhas numa janela de tempo.

    Returns:
        BubbleStats; com um único evento a lista de períodos fica vazia
    """
    if window is not None:
        events = [e for e in events if window[0] <= e.t_peak <= window[1]]
    tempos = [e.t_peak for e in events]
    periodos = [float(p) for p in np.diff(tempos)]

    largura = _media(e.width for e in events)
    periodo_medio = _media(periodos)
    razao = largura / periodo_medio if math.isfinite(periodo_medio) else math.nan

    ultimos = events[-CICLOS_ASSINTOTICOS:]
    return BubbleStats(
        periods=periodos,
        count=len(events),
        janela=tuple(window) if window is not None else None,
        mean_amplitude=_media(e.amplitude for e in events),
        mean_width=largura,
        ratio_r=razao,
        plateau=_media(e.plateau for e in ultimos),
        mean_asymmetry=_media(e.asymmetry for e in events if math.isfinite(e.width)),
        asymptotic_period=_media(periodos[-CICLOS_ASSINTOTICOS:]),
        asymptotic_amplitude=_media(e.amplitude for e in ultimos),
    )


def eventos_para_dataframe(events: Sequence[BubbleEvent]) -> pd.DataFrame:
    """Linhas index,t_peak,amplitude,width,t_zmin,lag,period_prev."""
    colunas = ['index', 't_peak', 'amplitude', 'width', 't_zmin', 'lag', 'period_prev']
    linhas = [{**asdict(e), 'lag': e.lag} for e in events]
    return pd.DataFrame(linhas, columns=colunas)


# ---------------------------------------------------------------------------
# Aproximante super-exponencial

def ajustar_aproximante(t, x, t_lambda: float, alpha: float = ALFA,
                        beta: float = BETA) -> Tuple[float, float, float]:
    """
    Mínimos quadrados de ln x + β ln τ sobre {1, τ^(-α)}, τ = t_Λ - t.

    Returns:
        (c1, c2, resíduo RMS de ln x)
    """
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    if len(t) < 3:
        raise ErroDominio("Janela de ajuste com menos de 3 pontos")
    if np.any(t >= t_lambda):
        raise ErroDominio(f"Janela de ajuste alcança t_Λ = {t_lambda}")
    if np.any(x <= 0):
        raise ErroDominio("x deve ser positivo na janela de ajuste")

    tau = t_lambda - t
    alvo = np.log(x) + beta * np.log(tau)
    regressores = np.column_stack([np.ones_like(tau), tau ** (-alpha)])
    coeficientes, *_ = np.linalg.lstsq(regressores, alvo, rcond=None)
    residuos = alvo - regressores @ coeficientes
    return float(math.exp(coeficientes[0])), float(coeficientes[1]), float(np.sqrt(np.mean(residuos ** 2)))


def patamar_pre_bolha(traj: Trajectory, inicio: float, fim: float) -> float:
    """Nível de x antes da subida: mediana das amostras em [inicio, fim]."""
    mascara = (traj.t >= inicio) & (traj.t <= fim)
    if not mascara.any():
        raise ErroDominio(f"Sem amostras em [{inicio}, {fim}] para o patamar")
    return float(np.median(traj.x[mascara]))


def _janela_por_patamar(traj: Trajectory, referencia: float, t_lambda: float) -> Optional[Tuple[float, float]]:
    """Do último cruzamento de x = 2 * patamar antes de t_Λ até t_Λ - margem."""
    fim = t_lambda - MARGEM_FIM_AJUSTE
    limiar = FATOR_PATAMAR * patamar_pre_bolha(traj, referencia, t_lambda)
    mascara = (traj.t >= referencia) & (traj.t <= fim)
    t, x = traj.t[mascara], traj.x[mascara]
    abaixo = np.nonzero(x < limiar)[0]
    inicio = float(t[abaixo[-1]]) if len(abaixo) else referencia
    if np.count_nonzero(t >= inicio) < PONTOS_MINIMOS_AJUSTE or inicio >= fim:
        return None
    return inicio, fim


def fit_superexponential(traj: Trajectory, peak_index: int = 0,
                         window_fraction: Optional[float] = None,
                         janela: Optional[Tuple[float, float]] = None) -> SuperExpFit:
    """
    Ajusta x_app(t) ao crescimento que precede um pico de x.

    t_Λ é o último máximo local de Λ antes do pico escolhido. A janela padrão
    começa no último instante em que x está abaixo do dobro do patamar
    pré-bolha (mediana de x desde o pico anterior, ou t = 0) e termina 0.5
    antes de t_Λ. Com window_fraction, a janela cobre essa fração final do
    intervalo entre o pico anterior e t_Λ.

    Args:
        traj: Trajetória de integrate_with_expansion
        peak_index: Índice do máximo de x (0 = primeiro)
        window_fraction: Fração do intervalo antes de t_Λ usada no ajuste
        janela: Janela explícita (início, fim) com fim < t_Λ

    Returns:
        SuperExpFit
    """
    if traj.expansao is None:
        raise ErroPrecondicao("fit_superexponential exige integrate_with_expansion")
    picos = traj.eventos_do_tipo('x_max')
    if not 0 <= peak_index < len(picos):
        raise ErroPrecondicao(f"Pico {peak_index} inexistente ({len(picos)} picos)")
    pico = picos[peak_index]
    maximo = traj.expansao.maximo_antes(pico.t)
    if maximo is None:
        raise ErroPrecondicao(f"Nenhum máximo de Λ antes do pico em t={pico.t:.3f}")
    t_lambda = maximo.t

    referencia = picos[peak_index - 1].t if peak_index > 0 else 0.0
    if janela is None and window_fraction is None:
        janela = _janela_por_patamar(traj, referencia, t_lambda)
        if janela is None:
            log(f"Cruzamento do patamar não deixa pontos antes de t_Λ={t_lambda:.3f}; "
                f"usando a fração {FRACAO_JANELA_PADRAO}", "AVISO")
            window_fraction = FRACAO_JANELA_PADRAO
    if janela is None:
        if not 0 < window_fraction <= 1:
            raise ErroDominio(f"window_fraction deve estar em (0, 1] (recebido {window_fraction})")
        janela = (t_lambda - window_fraction * (t_lambda - referencia), t_lambda - MARGEM_FIM_AJUSTE)
    inicio, fim = janela
    if fim >= t_lambda:
        raise ErroDominio(f"Janela ({inicio}, {fim}) toca ou passa t_Λ = {t_lambda}")
    if inicio >= fim:
        raise ErroDominio(f"Janela de ajuste vazia: ({inicio}, {fim})")

    mascara = (traj.t >= inicio) & (traj.t <= fim)
    c1, c2, rms = ajustar_aproximante(traj.t[mascara], traj.x[mascara], t_lambda)
    if c1 <= 0 or c2 <= 0:
        log(f"Ajuste com coeficientes não positivos: c1={c1:.4g}, c2={c2:.4g}", "AVISO")
    return SuperExpFit(c1, c2, t_lambda, (float(inicio), float(fim)), rms,
                       t_peak=pico.t, n_pontos=int(mascara.sum()))


def curva_ajuste(traj: Trajectory, ajuste: SuperExpFit) -> pd.DataFrame:
    """Amostras t, x, x_app na janela do ajuste."""
    inicio, fim = ajuste.janela
    mascara = (traj.t >= inicio) & (traj.t <= fim)
    t = traj.t[mascara]
    return pd.DataFrame({'t': t, 'x': traj.x[mascara], 'x_app': ajuste.avaliar(t)})


# ---------------------------------------------------------------------------
# Ciclo limite e expoentes críticos

def medir_ciclo_limite(b: float, g: float, x0: float = 1.0, z0: float = 0.1,
                       ciclos: int = CICLOS_MINIMOS, t_inicial: float = 500.0,
                       t_maximo: float = 50000.0, rtol: float = 1e-10, atol: float = 1e-12,
                       dt: float = 0.02) -> MedicaoCiclo:
    """
    Integra até cobrir pelo menos `ciclos` períodos depois do transiente e
    mede período, amplitude e patamar médios dos últimos 3 ciclos.
    """
    medicao = MedicaoCiclo(b, g, x0, z0)
    params = ModelParams(b, g)
    t_end = t_inicial
    while True:
        try:
            traj = integrate(params, IntegrationConfig(t_end=t_end, x0=x0, z0=z0, rtol=rtol, atol=atol, dt=dt))
        except ErroSimulacao as e:
            medicao.status, medicao.nota = 'falha', str(e)
            return medicao
        if not traj.concluida:
            medicao.status, medicao.nota = 'divergiu', f"divergência em t={traj.t_final:.1f}"
            return medicao

        picos = traj.eventos_do_tipo('x_max')
        if len(picos) >= ciclos + 1 or t_end >= t_maximo:
            break
        if len(picos) >= 2:
            periodo = picos[-1].t - picos[-2].t
            necessario = picos[0].t + (ciclos + 2) * periodo
        else:
            necessario = 2.0 * t_end
        t_end = min(t_maximo, max(necessario, 1.5 * t_end))

    medicao.t_end = t_end
    eventos = detect_bubbles(traj, 'auto')
    stats = bubble_stats(eventos)
    medicao.n_picos = stats.count
    if stats.count < 2:
        medicao.status = 'sem_ciclo'
        medicao.nota = f"{stats.count} picos após o transiente até t={t_end:.1f}"
        return medicao
    medicao.periodo = stats.asymptotic_period
    medicao.amplitude = stats.asymptotic_amplitude
    medicao.plateau = stats.plateau
    medicao.largura = _media(e.width for e in eventos[-CICLOS_ASSINTOTICOS:])
    return medicao


def power_law_slope(log_x: Sequence[float], log_y: Sequence[float]) -> Tuple[float, float]:
    """
    Inclinação por mínimos quadrados ordinários e seu erro padrão.

    Args:
        log_x: Abscissas (logaritmos)
        log_y: Ordenadas (logaritmos)

    Returns:
        (inclinação, erro padrão)
    """
    log_x = np.asarray(log_x, dtype=float)
    log_y = np.asarray(log_y, dtype=float)
    if log_x.shape != log_y.shape or len(log_x) < 3:
        raise ErroDominio("São necessários pelo menos 3 pares de pontos")
    if not (np.all(np.isfinite(log_x)) and np.all(np.isfinite(log_y))):
        raise ErroDominio("Pontos não finitos na regressão")
    if np.ptp(log_x) == 0:
        raise ErroDominio("Abscissas degeneradas (todas iguais)")
    resultado = linregress(log_x, log_y)
    return float(resultado.slope), float(resultado.stderr)


def _estimar(nome: str, rotulo: str, valores_grade: Sequence[float], medicoes: List,
             observavel: str) -> ExponentEstimate:
    linhas, excluidos = [], []
    for valor, medicao in zip(valores_grade, medicoes):
        quantidade = getattr(medicao, observavel, math.nan) if isinstance(medicao, MedicaoCiclo) else math.nan
        valido = isinstance(medicao, MedicaoCiclo) and medicao.valido and math.isfinite(quantidade)
        if not valido:
            nota = medicao.nota if isinstance(medicao, MedicaoCiclo) else str(medicao)
            excluidos.append({rotulo: float(valor), 'nota': nota})
            log(f"Ponto {rotulo}={valor:.3g} excluído da regressão: {nota}", "AVISO")
        if valido:
            status = 'ok'
        elif isinstance(medicao, MedicaoCiclo) and medicao.valido:
            status = 'sem_valor'
        else:
            status = medicao.status if isinstance(medicao, MedicaoCiclo) else 'falha'
        linhas.append({
            rotulo: float(valor),
            observavel: quantidade,
            f'ln_{rotulo}': math.log(abs(valor)),
            f'ln_{observavel}': math.log(quantidade) if valido else math.nan,
            'status': status,
        })
    tabela = pd.DataFrame(linhas)
    validos = tabela[tabela['status'] == 'ok']
    inclinacao, erro = power_law_slope(validos[f'ln_{rotulo}'], validos[f'ln_{observavel}'])
    estimativa = ExponentEstimate(nome, -inclinacao, erro, len(validos), [float(v) for v in valores_grade],
                                  tabela, excluidos)

    # a correção ao expoente decai devagar: reporta também as décadas mais próximas do limite
    if len(validos) > PONTOS_CAUDA:
        cauda = validos.nsmallest(PONTOS_CAUDA, f'ln_{rotulo}')
        inclinacao_cauda, erro_cauda = power_law_slope(cauda[f'ln_{rotulo}'], cauda[f'ln_{observavel}'])
        estimativa.valor_cauda, estimativa.erro_cauda = -inclinacao_cauda, erro_cauda
        log(f"{nome} nas {PONTOS_CAUDA} menores distâncias: {estimativa.valor_cauda:.4f} ± {erro_cauda:.4f}")
    return estimativa


def estimate_nu(g: float, delta_grid: Sequence[float], workers: int = 1,
                x0: float = 1.0, z0: float = 0.1, **opcoes) -> ExponentEstimate:
    """
    ν a partir do período assintótico L(Δ), Δ = b - b_c(g) > 0.

    Args:
        g: Valor fixo de g
        delta_grid: Distâncias Δ > 0 à linha crítica
        workers: Processos paralelos (a ordem do resultado é a da grade)

    Returns:
        ExponentEstimate com a tabela Δ, periodo, ln Δ, ln periodo
    """
    if any(not d > 0 for d in delta_grid):
        raise ErroDominio("Todos os Δ devem ser positivos")
    b_c = critical_b_of_g(g)
    log(f"Estimando ν em g={g}: b_c={b_c:.8f}, {len(delta_grid)} pontos")
    tarefas = [dict(b=b_c + d, g=g, x0=x0, z0=z0, **opcoes) for d in delta_grid]
    medicoes = mapear(medir_ciclo_limite, tarefas, workers)
    estimativa = _estimar('nu', 'delta', delta_grid, medicoes, 'periodo')
    estimativa.tabela.insert(0, 'b', [t['b'] for t in tarefas])
    return estimativa


def estimate_gamma(b: float, g_grid: Sequence[float], workers: int = 1,
                   x0: float = 1.0, z0: float = 0.1, **opcoes) -> ExponentEstimate:
    """γ a partir da amplitude assintótica A(g), g -> 0-."""
    if any(not g < 0 for g in g_grid):
        raise ErroDominio("Todos os g devem ser negativos")
    log(f"Estimando γ em b={b}: {len(g_grid)} pontos")
    tarefas = [dict(b=b, g=g, x0=x0, z0=z0, **opcoes) for g in g_grid]
    medicoes = mapear(medir_ciclo_limite, tarefas, workers)
    return _estimar('gamma', 'g', g_grid, medicoes, 'amplitude')


def linha_tabela(b: float, g: float, janela: Tuple[float, float] = (0.0, 100.0),
                 x0: float = 1.0, z0: float = 0.1, rtol: float = 1e-10,
                 atol: float = 1e-12, dt: float = 0.005) -> Dict:
    """
    Contagem das bolhas numa janela, sem remover transiente, com amplitude e
    largura típicas.

    Num ciclo limite A e w são as médias da janela. Se as amplitudes só caem
    e a última fica mais de 10% abaixo da primeira, a oscilação é amortecida
    (junto à linha de Hopf) e a linha reporta a primeira bolha.
    """
    # integra além da janela para fechar a meia-largura do último pico
    config = IntegrationConfig(t_end=janela[1] + 20.0, x0=x0, z0=z0, rtol=rtol, atol=atol, dt=dt)
    traj = integrate(ModelParams(b, g), config)
    eventos = [e for e in detect_bubbles(traj, 'nenhum') if janela[0] <= e.t_peak <= janela[1]]
    stats = bubble_stats(eventos)
    amplitude, largura = stats.mean_amplitude, stats.mean_width

    amplitudes = [e.amplitude for e in eventos]
    amortecida = (len(amplitudes) >= 2 and all(np.diff(amplitudes) < 0)
                  and amplitudes[-1] < (1.0 - QUEDA_AMORTECIMENTO) * amplitudes[0])
    if amortecida:
        amplitude, largura = eventos[0].amplitude, eventos[0].width
        log(f"g={g}: amplitudes decaem de {amplitudes[0]:.4g} a {amplitudes[-1]:.4g}; "
            f"usando a primeira bolha")
    return {'g': g, 'N': stats.count, 'A': amplitude, 'w': largura, 'status': traj.status}


def table1(g_values: Sequence[float], b: float = 1.0, janela: Tuple[float, float] = (0.0, 100.0),
           workers: int = 1, **opcoes) -> pd.DataFrame:
    """Tabela de N, A e w por g para b fixo, linhas na ordem de g_values."""
    tarefas = [dict(b=b, g=g, janela=janela, **opcoes) for g in g_values]
    linhas = mapear(linha_tabela, tarefas, workers)
    tabela = []
    for g, linha in zip(g_values, linhas):
        if isinstance(linha, dict):
            tabela.append(linha)
        else:
            tabela.append({'g': g, 'N': 0, 'A': math.nan, 'w': math.nan, 'status': f'falha: {linha}'})
    return pd.DataFrame(tabela, columns=['g', 'N', 'A', 'w', 'status'])


def verificar_atrator(b: float, g: float, condicoes_iniciais: Sequence[Tuple[float, float]],
                      workers: int = 1, **opcoes) -> Tuple[pd.DataFrame, float]:
    """
    Mede o ciclo limite a partir de várias condições iniciais.

    Returns:
        (tabela x0, z0, periodo, amplitude, plateau, status; maior dispersão relativa)
    """
    tarefas = [dict(b=b, g=g, x0=x0, z0=z0, **opcoes) for x0, z0 in condicoes_iniciais]
    medicoes = mapear(medir_ciclo_limite, tarefas, workers)
    linhas = []
    for (x0, z0), m in zip(condicoes_iniciais, medicoes):
        if isinstance(m, MedicaoCiclo):
            linhas.append({'x0': x0, 'z0': z0, 'periodo': m.periodo, 'amplitude': m.amplitude,
                           'plateau': m.plateau, 'status': m.status})
        else:
            linhas.append({'x0': x0, 'z0': z0, 'periodo': math.nan, 'amplitude': math.nan,
                           'plateau': math.nan, 'status': f'falha: {m}'})
    tabela = pd.DataFrame(linhas)

    dispersao = 0.0
    for coluna in ('periodo', 'amplitude', 'plateau'):
        valores = tabela[coluna].to_numpy(dtype=float)
        if not np.all(np.isfinite(valores)):
            dispersao = math.nan
            break
        dispersao = max(dispersao, float(np.ptp(valores) / np.mean(valores)))
    return tabela, dispersao


def main():
    """Função principal para teste do módulo."""
    print("=== BOLHAS - TESTE ===")
    traj = integrate_with_expansion(ModelParams(0.4, -0.029),
                                    IntegrationConfig(t_end=400.0, x0=1.0, z0=0.1))
    eventos = detect_bubbles(traj, 'nenhum')
    for e in eventos[:3]:
        print(f"  pico t={e.t_peak:.2f} A={e.amplitude:.2f} w={e.width:.3f} atraso/w={e.relative_lag:.3f}")
    stats = bubble_stats(eventos)
    print(f"N={stats.count} R={stats.ratio_r:.4f}")
    ajuste = fit_superexponential(traj, 0)
    print(f"c1={ajuste.c1:.3f} c2={ajuste.c2:.3f} t_Λ={ajuste.t_lambda:.2f} rms={ajuste.rms_log_residual:.4f}")


if __name__ == "__main__":
    main()
